#ifndef PICX_JSON_IO_HPP
#define PICX_JSON_IO_HPP

#include <json.hpp>

#include "picx/catalog.hpp"
#include "picx/divisor.hpp"
#include "picx/ff.hpp"
#include "picx/hh.hpp"
#include "picx/separation.hpp"
#include "picx/weyl.hpp"

namespace picx {

using nlohmann::json;

inline json to_json(const DivisorClass& h)
{
  return json{{"d", h.d}, {"m", h.m}};
}

inline DivisorClass class_from_json(const json& j)
{
  DivisorClass h;
  h.d = j.at("d").get<int64_t>();
  h.m = j.at("m").get<std::vector<int64_t>>();
  return h;
}

inline json to_json(const ReductionResult& r)
{
  return json{{"canonical", to_json(r.canonical)},
              {"word", r.word},
              {"standardness", to_string(r.standardness)}};
}

inline json to_json(const OrthogonalDecomposition& d)
{
  json pieces = json::array();
  for (const auto& [n, f] : d.pieces)
    pieces.push_back(json{{"n", n}, {"class", to_json(f)}});
  return json{{"standardPart", to_json(d.standard_part)}, {"pieces", pieces}};
}

inline json to_json(const GeneratingDecomposition& g)
{
  return json{{"a", g.a}, {"b", g.b}, {"c", g.c}, {"alpha", g.alpha}};
}

inline json to_json(const StructureReport& s)
{
  json j{{"standardPart", to_json(s.standard_part)},
         {"kind", to_string(s.kind)}};
  json pieces = json::array();
  for (const auto& [n, f] : s.exceptional_pieces)
    pieces.push_back(json{{"n", n}, {"class", to_json(f)}});
  j["pieces"] = pieces;
  if (s.kind == StructureKind::PencilMultiple ||
      s.kind == StructureKind::EllipticMultiple) {
    j["multiple"] = s.multiple;
    j["base"] = to_json(*s.base);
  }
  return j;
}

inline json to_json(const H0Prediction& p)
{
  json j{{"h0", p.h0},           {"h1", p.h1},
         {"chi", p.chi},         {"effective", p.effective},
         {"special", p.special}, {"conditional", p.conditional}};
  if (p.decomposition) j["decomposition"] = to_json(*p.decomposition);
  return j;
}

inline json to_json(const SeparationViolation& v)
{
  return json{{"curve", to_json(v.curve)},
              {"genus", v.genus},
              {"threshold", v.threshold},
              {"value", v.value},
              {"delta", v.delta}};
}

inline json to_json(const SeparationReport& r)
{
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  json d_max = json::array();
  for (const auto& [a, bound] : r.d_max_used)
    d_max.push_back(json{{"genus", a}, {"dMax", bound}});
  return json{{"verdict", to_string(r.verdict)},
              {"k", r.k},
              {"chi", r.chi},
              {"canonical", to_json(r.canonical)},
              {"hypotheses",
               json{{"standard", r.hypotheses.standard},
                    {"chiAtLeast3k", r.hypotheses.chi_at_least_3k},
                    {"mrAtLeastKminus1", r.hypotheses.mr_at_least_k_minus_1}}},
              {"violations", violations},
              {"deltaUsed", r.delta_used},
              {"dMaxUsed", d_max}};
}

inline json to_json(const AdjunctionReport& r)
{
  json j{{"verdict", to_string(r.verdict)},
         {"nefBig", r.nef_big},
         {"squareBound", r.square_bound},
         {"searchBound", r.search_bound}};
  if (r.obstruction) {
    j["obstruction"] = to_json(*r.obstruction);
    j["obstructionGenus"] = r.obstruction_data->genus;
    j["obstructionPairing"] = r.obstruction_data->value;
  }
  return j;
}

inline json to_json(const FailingClass& f)
{
  json violations = json::array();
  for (const auto& v : f.violations) violations.push_back(to_json(v));
  return json{{"class", to_json(f.cls)}, {"violations", violations}};
}

inline json to_json(const IsolatedCurve& c)
{
  return json{{"class", to_json(c.cls)},
              {"genus", c.genus},
              {"latticeLevel", c.lattice_level}};
}

inline json to_json(const ff::HhVerification& v)
{
  return json{{"class", to_json(v.cls)},
              {"predicted", v.predicted},
              {"actual", v.actual},
              {"chi", v.chi},
              {"agree", v.agree},
              {"prime", v.p},
              {"trials", v.trials},
              {"seed", v.seed},
              {"realizedDegree", v.realized_degree},
              {"realizedMult", v.realized_mult}};
}

inline json to_json(const ff::ClusterReport& r)
{
  json j{{"class", to_json(r.cls)},
         {"k", r.k},
         {"prime", r.p},
         {"samples", r.samples},
         {"seed", r.seed},
         {"h0", r.h0},
         {"realizedDegree", r.realized_degree},
         {"realizedMult", r.realized_mult},
         {"baseCandidates", r.base_candidates},
         {"verdict", r.failed ? "failure" : "no failure observed"}};
  if (r.on_curve) j["onCurve"] = to_json(*r.on_curve);
  if (r.failure) {
    json pts = json::array();
    for (const auto& q : r.failure->points) pts.push_back(json{q[0], q[1]});
    j["failure"] = json{{"sampleIndex", r.failure->sample_index},
                        {"kind", r.failure->kind},
                        {"points", pts},
                        {"rankDrop", r.failure->rank_drop}};
  }
  return j;
}

} // namespace picx

#endif
