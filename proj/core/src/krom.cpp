#include "bairegames/krom.hpp"

#include <algorithm>
#include <random>

namespace bairegames::krom {

using topology::BaseElement;
using topology::Point;
using topology::SpacePtr;

namespace {

void check_space(const SpacePtr& space) {
  if (!space) throw PreconditionError("decreasing sequence: null space");
}

}  // namespace

DecreasingSeq make_decreasing(SpacePtr space, std::vector<BaseElement> elems) {
  check_space(space);
  if (elems.empty()) {
    throw PreconditionError("decreasing sequence: length must be at least 1");
  }
  for (std::size_t k = 0; k + 1 < elems.size(); ++k) {
    if (!space->contains(elems[k + 1], elems[k])) {
      throw PreconditionError("decreasing sequence: entry " + std::to_string(k + 1) +
                              " is not contained in entry " + std::to_string(k));
    }
  }
  return DecreasingSeq{std::move(space), std::move(elems)};
}

DecreasingSeq extend(DecreasingSeq seq, BaseElement next) {
  if (!seq.space->contains(next, seq.last())) {
    throw PreconditionError("decreasing sequence: extension breaks the chain");
  }
  seq.elems.push_back(std::move(next));
  return seq;
}

DecreasingSeq prefix_of(const DecreasingSeq& seq, std::size_t len) {
  if (len == 0 || len > seq.size()) {
    throw PreconditionError("decreasing sequence: bad prefix length");
  }
  return DecreasingSeq{seq.space,
                       std::vector<BaseElement>(seq.elems.begin(), seq.elems.begin() + len)};
}

TailRule constant_tail() {
  return TailRule{"const", [](const topology::Space&, const Point&,
                              const std::vector<BaseElement>& so_far) { return so_far.back(); }};
}

TailRule refine_tail() {
  return TailRule{"refine", [](const topology::Space& space, const Point& witness,
                               const std::vector<BaseElement>& so_far) {
                    return space.refine(witness, so_far.back(), 1);
                  }};
}

KromPoint::KromPoint(DecreasingSeq prefix, TailRule tail, Point witness)
    : prefix_(std::move(prefix)), tail_(std::move(tail)), witness_(std::move(witness)) {
  if (!tail_.next) throw PreconditionError("krom point: missing tail rule");
  for (const auto& e : prefix_.elems) {
    if (!prefix_.space->member(witness_, e)) {
      throw PreconditionError("krom point: witness escapes a prefix element");
    }
  }
}

const BaseElement& KromPoint::at(std::size_t k) {
  while (prefix_.size() <= k) {
    BaseElement next = tail_.next(*prefix_.space, witness_, prefix_.elems);
    if (!prefix_.space->contains(next, prefix_.last())) {
      throw InvariantViolation("krom point: tail rule broke the decreasing chain");
    }
    if (!prefix_.space->member(witness_, next)) {
      throw InvariantViolation("krom point: tail rule dropped the witness");
    }
    prefix_.elems.push_back(std::move(next));
  }
  return prefix_.elems[k];
}

DecreasingSeq KromPoint::stem(std::size_t len) {
  if (len == 0) throw PreconditionError("krom point: stems have length at least 1");
  at(len - 1);
  return prefix_of(prefix_, len);
}

KromPoint canonical_krom_point(const SpacePtr& space, const Point& center) {
  DecreasingSeq start = make_decreasing(space, {space->whole()});
  return KromPoint(std::move(start), refine_tail(), center);
}

KromBasicOpen make_basic_open(DecreasingSeq stem) { return KromBasicOpen{std::move(stem)}; }

bool basic_subset(const KromBasicOpen& g, const KromBasicOpen& f) {
  if (g.size() < f.size()) return false;
  return std::equal(f.stem.elems.begin(), f.stem.elems.end(), g.stem.elems.begin());
}

bool basic_disjoint(const KromBasicOpen& g, const KromBasicOpen& f) {
  // Every stem has extensions (repeat the final element), so basic opens are
  // nonempty and incompatibility is the exact disjointness criterion.
  return !basic_subset(g, f) && !basic_subset(f, g);
}

bool basic_member(KromPoint& f, const KromBasicOpen& g) {
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!(f.at(k) == g.stem.at(k))) return false;
  }
  return true;
}

UltraDistance ultradist(KromPoint& f, KromPoint& g, std::size_t fuel) {
  if (f.space()->name() != g.space()->name()) {
    throw DomainError("ultradist: points from different spaces");
  }
  for (std::size_t k = 0; k < fuel; ++k) {
    if (!(f.at(k) == g.at(k))) {
      return UltraDistance{true, pow2_neg(k)};
    }
  }
  // No difference within budget. Equal tail rules applied to equal state
  // reproduce each other forever, so the distance is exactly zero; anything
  // else stays an upper bound.
  bool judged_equal = !f.tail_token().empty() && f.tail_token() == g.tail_token() &&
                      f.witness() == g.witness();
  if (judged_equal) return UltraDistance{true, Rational(0)};
  return UltraDistance{false, pow2_neg(fuel)};
}

K0Certificate k0_certify(KromPoint& f, std::size_t depth, std::size_t fuel) {
  K0Certificate cert;
  cert.witness = f.witness();
  std::uint64_t j = 0;
  bool first = true;
  for (std::size_t k = 0; k < depth; ++k) {
    BaseElement nbhd = f.space()->neighborhood(f.witness(), k);
    std::uint64_t start = first ? 0 : j + 1;
    bool found = false;
    for (std::uint64_t cand = start; cand < start + fuel; ++cand) {
      if (f.space()->contains(f.at(cand), nbhd)) {
        j = cand;
        found = true;
        break;
      }
    }
    if (!found) {
      throw NotCertifiedAtDepth(k, "no element enters neighborhood " + std::to_string(k) +
                                       " within fuel " + std::to_string(fuel));
    }
    first = false;
    cert.evidence.emplace_back(k, j);
  }
  return cert;
}

bool k0_verify(KromPoint& f, const K0Certificate& cert, std::size_t depth) {
  if (!(cert.witness == f.witness())) return false;
  if (cert.evidence.size() < depth) return false;
  std::uint64_t prev = 0;
  bool first = true;
  for (std::size_t k = 0; k < depth; ++k) {
    auto [claimed_k, j] = cert.evidence[k];
    if (claimed_k != k) return false;
    if (!first && j <= prev) return false;
    BaseElement nbhd = f.space()->neighborhood(f.witness(), k);
    if (!f.space()->contains(f.at(j), nbhd)) return false;
    prev = j;
    first = false;
  }
  return true;
}

DecreasingSeq ccc_pi_base_step(const DecreasingSeq& f) {
  return extend(f, f.space->ccc_witness_subopen(f.last()));
}

bool disjoint_family_projection(const KromBasicOpen& f0, std::vector<KromBasicOpen> family,
                                std::string* why) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!basic_subset(family[i], f0)) {
      throw PreconditionError("projection check: family member " + std::to_string(i) +
                              " does not extend the base stem");
    }
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (!basic_disjoint(family[i], family[j])) {
        throw PreconditionError("projection check: members " + std::to_string(i) + " and " +
                                std::to_string(j) + " have compatible stems");
      }
    }
  }
  const auto& space = f0.stem.space;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!space->contains(family[i].stem.last(), f0.stem.last())) {
      if (why) *why = "member " + std::to_string(i) + " projects outside the base element";
      return false;
    }
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (!space->disjoint(family[i].stem.last(), family[j].stem.last())) {
        if (why) {
          *why = "projections of members " + std::to_string(i) + " and " + std::to_string(j) +
                 " overlap";
        }
        return false;
      }
    }
  }
  return true;
}

std::vector<KromBasicOpen> generate_disjoint_family(const KromBasicOpen& f0, std::size_t count,
                                                    std::uint64_t seed) {
  const auto& space = f0.stem.space;
  auto pieces = topology::split_element(*space, f0.stem.last(), count);
  if (!pieces) {
    throw UnsupportedSpaceError("disjoint family generation: element does not split into " +
                                std::to_string(count) + " pieces");
  }
  std::mt19937_64 rng(seed);
  std::vector<KromBasicOpen> out;
  out.reserve(count);
  for (auto& piece : *pieces) {
    DecreasingSeq stem = extend(f0.stem, piece);
    // A few extra refinement steps so family members have varying depths;
    // refinement keeps each stem inside its own piece, preserving
    // disjointness of the projections.
    std::size_t extra = rng() % 3;
    for (std::size_t e = 0; e < extra; ++e) {
      stem = extend(stem, space->refine(space->pick_point(stem.last()), stem.last(), 1));
    }
    out.push_back(make_basic_open(std::move(stem)));
  }
  return out;
}

KromPoint splice_below(const DecreasingSeq& h, KromPoint g) {
  if (h.space->name() != g.space()->name()) {
    throw DomainError("splice: stem and tail from different spaces");
  }
  if (!h.space->contains(g.at(0), h.last())) {
    throw PreconditionError("splice: tail does not start inside the stem's final element");
  }
  auto carried = std::make_shared<KromPoint>(std::move(g));
  std::size_t shift = h.size();
  DecreasingSeq prefix = extend(h, carried->at(0));
  TailRule rule;
  rule.token = "splice+" + std::to_string(shift) + "(" + carried->tail_token() + ")";
  rule.next = [carried, shift](const topology::Space&, const Point&,
                               const std::vector<BaseElement>& so_far) {
    return carried->at(so_far.size() - shift);
  };
  return KromPoint(std::move(prefix), std::move(rule), carried->witness());
}

}  // namespace bairegames::krom
