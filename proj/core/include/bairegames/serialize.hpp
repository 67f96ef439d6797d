#ifndef BAIREGAMES_SERIALIZE_HPP
#define BAIREGAMES_SERIALIZE_HPP

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "bairegames/games.hpp"
#include "bairegames/krom.hpp"
#include "bairegames/product_games.hpp"
#include "bairegames/topology.hpp"
#include "bairegames/tree.hpp"
#include "bairegames/weave.hpp"

namespace bairegames::ser {

// Key order is part of the trace format (byte-identical reruns), hence the
// ordered flavor everywhere.
using Json = nlohmann::ordered_json;

Json encode(const Rational& r);  // canonical "p/q" text
Json encode(const topology::Point& p);
Json encode(const topology::BaseElement& e);
Json encode(const topology::PointedOpen& po);

Json encode(const games::Move& m);
Json encode(const games::GameSetup& setup);
Json encode(const games::Outcome& o);
Json encode(const games::Transcript& t);

Json encode(const tree::TreeNode& t);  // plain integer array

Json encode(const krom::DecreasingSeq& seq);  // array of base elements
Json encode(const krom::K0Certificate& cert);

Json encode(const transfer::NodeCheck& c);
Json encode(const transfer::StepReport& r);
Json encode(const transfer::ConvergenceCheck& c);
Json encode(const transfer::WitnessReport& w);

Json encode(const product::ProductBox& box);
Json encode(const product::KromBox& box);
Json encode(const product::DualityReport& rpt);

// One JSON document per line, no pretty printing, flushed per line so fuel
// aborts still leave a readable prefix.
class JsonlWriter {
 public:
  explicit JsonlWriter(std::ostream& out) : out_(out) {}
  void line(const Json& doc);

 private:
  std::ostream& out_;
};

}  // namespace bairegames::ser

#endif
