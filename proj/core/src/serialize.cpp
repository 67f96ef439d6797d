#include "bairegames/serialize.hpp"

#include <ostream>

namespace bairegames::ser {

using topology::BaseDescriptor;
using topology::PointDescriptor;

Json encode(const Rational& r) { return rational_to_string(r); }

namespace {

Json encode_interval(const topology::Interval& iv) {
  Json j;
  j["lo"] = iv.lo ? Json(rational_to_string(*iv.lo)) : Json(nullptr);
  j["hi"] = iv.hi ? Json(rational_to_string(*iv.hi)) : Json(nullptr);
  return j;
}

Json encode_desc(const BaseDescriptor& d) {
  Json j;
  if (const auto* iv = std::get_if<topology::Interval>(&d)) {
    j["kind"] = "interval";
    j["lo"] = iv->lo ? Json(rational_to_string(*iv->lo)) : Json(nullptr);
    j["hi"] = iv->hi ? Json(rational_to_string(*iv->hi)) : Json(nullptr);
  } else if (const auto* cy = std::get_if<topology::Cylinder>(&d)) {
    j["kind"] = "cylinder";
    j["prefix"] = cy->prefix;
  } else if (const auto* om = std::get_if<topology::OpenMask>(&d)) {
    j["kind"] = "mask";
    j["bits"] = om->bits;
  } else if (const auto* is = std::get_if<topology::IsolatedSingleton>(&d)) {
    j["kind"] = "isolated";
    j["index"] = is->index;
  } else {
    const auto& et = std::get<topology::EuclideanWithTail>(d);
    j["kind"] = "window-with-tail";
    j["window"] = encode_interval(et.window);
    j["excluded_prefix"] = et.excluded_prefix;
  }
  return j;
}

Json encode_pdesc(const PointDescriptor& d) {
  Json j;
  if (const auto* rp = std::get_if<topology::RationalPoint>(&d)) {
    j["kind"] = "rational";
    j["value"] = rational_to_string(rp->value);
  } else if (const auto* sp = std::get_if<topology::SeqPoint>(&d)) {
    j["kind"] = "sequence";
    j["prefix"] = sp->prefix;
    j["tail"] = sp->tail;
  } else if (const auto* fp = std::get_if<topology::FinitePoint>(&d)) {
    j["kind"] = "finite";
    j["index"] = fp->index;
  } else {
    const auto& rm = std::get<topology::RemarkPoint>(d);
    j["kind"] = "remark";
    if (const auto* q = std::get_if<Rational>(&rm.at)) {
      j["at"] = rational_to_string(*q);
    } else {
      j["isolated"] = std::get<std::uint64_t>(rm.at);
    }
  }
  return j;
}

}  // namespace

Json encode(const topology::Point& p) {
  Json j;
  j["space"] = p.space;
  j["point"] = encode_pdesc(p.desc);
  return j;
}

Json encode(const topology::BaseElement& e) {
  Json j;
  j["space"] = e.space;
  j["open"] = encode_desc(e.desc);
  return j;
}

Json encode(const topology::PointedOpen& po) {
  Json j;
  j["point"] = encode(po.point);
  j["open"] = encode(po.open);
  return j;
}

Json encode(const games::Move& m) {
  Json j;
  if (const auto* e = std::get_if<topology::BaseElement>(&m)) {
    j["move"] = "open";
    j["value"] = encode(*e);
  } else if (const auto* po = std::get_if<topology::PointedOpen>(&m)) {
    j["move"] = "pointed-open";
    j["value"] = encode(*po);
  } else {
    j["move"] = "point";
    j["value"] = encode(std::get<topology::Point>(m));
  }
  return j;
}

Json encode(const games::GameSetup& setup) {
  Json j;
  j["game"] = games::kind_name(setup.kind);
  j["space"] = setup.space ? Json(setup.space->name()) : Json(nullptr);
  if (setup.center) j["center"] = encode(*setup.center);
  return j;
}

Json encode(const games::Outcome& o) {
  Json j;
  j["outcome"] = games::outcome_name(o);
  if (const auto* a = std::get_if<games::AlphaCertified>(&o)) {
    j["witness"] = encode(a->witness);
  } else if (const auto* b = std::get_if<games::BetaCertified>(&o)) {
    j["prefix"] = b->prefix;
    Json ex = Json::array();
    for (const auto& [point, slot] : b->exclusions) ex.push_back(Json::array({point, slot}));
    j["exclusions"] = ex;
  }
  return j;
}

Json encode(const games::Transcript& t) {
  Json j;
  j["setup"] = encode(t.history.setup);
  j["depth"] = t.depth;
  Json moves = Json::array();
  for (const auto& m : t.history.moves) moves.push_back(encode(m));
  j["moves"] = moves;
  j["result"] = encode(t.outcome);
  if (t.diagnostics) {
    Json tails = Json::array();
    for (const auto& [k, d] : t.diagnostics->tail_depth)
      tails.push_back(Json::array({k, d}));
    j["tail_depth"] = tails;
  }
  return j;
}

Json encode(const tree::TreeNode& t) { return Json(t); }

Json encode(const krom::DecreasingSeq& seq) {
  Json j = Json::array();
  for (const auto& e : seq.elems) j.push_back(encode(e));
  return j;
}

Json encode(const krom::K0Certificate& cert) {
  Json j;
  j["witness"] = encode(cert.witness);
  Json ev = Json::array();
  for (const auto& [k, jk] : cert.evidence) ev.push_back(Json::array({k, jk}));
  j["evidence"] = ev;
  return j;
}

Json encode(const transfer::NodeCheck& c) {
  Json j;
  j["node"] = encode(c.node);
  j["minus_exact"] = c.minus_exact;
  j["minus_sampled"] = c.minus_sampled;
  if (c.has_plus) {
    j["plus_exact"] = c.plus_exact;
    j["plus_sampled"] = c.plus_sampled;
  }
  j["ok"] = c.ok();
  return j;
}

Json encode(const transfer::StepReport& r) {
  Json j;
  j["step"] = r.step;
  j["refinements"] = r.refinements;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(encode(c));
  j["checks"] = checks;
  j["ok"] = r.all_ok();
  return j;
}

Json encode(const transfer::ConvergenceCheck& c) {
  Json j;
  j["node"] = encode(c.node);
  j["ok"] = c.ok;
  return j;
}

Json encode(const transfer::WitnessReport& w) {
  Json j;
  j["x"] = encode(w.x);
  j["y"] = encode(w.y);
  j["in_start_box"] = w.in_start_box;
  Json oc = Json::array();
  for (const auto& c : w.oracle_checks) {
    Json one;
    one["level"] = c.level;
    one["tested"] = c.tested;
    one["ok"] = c.ok;
    oc.push_back(one);
  }
  j["oracle_checks"] = oc;
  j["certified"] = w.certified;
  return j;
}

Json encode(const product::ProductBox& box) {
  Json j = Json::array();
  for (const auto& [i, e] : box.factors) {
    Json one;
    one["index"] = i;
    one["factor"] = encode(e);
    j.push_back(one);
  }
  return j;
}

Json encode(const product::KromBox& box) {
  Json j = Json::array();
  for (const auto& [i, stem] : box.stems) {
    Json one;
    one["index"] = i;
    one["stem"] = encode(stem);
    j.push_back(one);
  }
  return j;
}

Json encode(const product::DualityReport& rpt) {
  Json j;
  j["plays"] = rpt.plays;
  j["lift_moves"] = rpt.lift_moves;
  j["extraction_checks"] = rpt.extraction_checks;
  j["failures"] = rpt.failures;
  j["clean"] = rpt.clean();
  return j;
}

void JsonlWriter::line(const Json& doc) {
  out_ << doc.dump() << '\n';
  out_.flush();
}

}  // namespace bairegames::ser
