#ifndef BAIREGAMES_SPACE_FACTORIES_HPP
#define BAIREGAMES_SPACE_FACTORIES_HPP

#include "bairegames/topology.hpp"

namespace bairegames::topology {

// Family constructors, one per translation unit.
SpacePtr detail_make_rationals();
SpacePtr detail_make_sequence_space(std::uint32_t alphabet);  // 0 = unbounded digits
SpacePtr detail_make_remark_space(std::uint64_t isolated_bound);  // 0 = unbounded

}  // namespace bairegames::topology

#endif
