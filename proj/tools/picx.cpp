// picx: exact computations with divisor classes on blow-ups of the plane.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "picx/json_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace picx;

// class literals "d;m1,m2,..." or named catalog constants:
// C9, G1, G2, G3, K(r), antiK(r), E(i,r), C(i,r)
DivisorClass parse_class_arg(const std::string& raw)
{
  std::string s;
  for (char c : raw)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty class literal");
  if (s.find(';') != std::string::npos) return parse_class(s);
  auto args = [&](const std::string& name) -> std::vector<int> {
    // name(i) or name(i,j)
    if (s.size() <= name.size() + 2 || s[name.size()] != '(' || s.back() != ')')
      throw std::invalid_argument("bad constant syntax: " + s);
    std::vector<int> out;
    std::string body = s.substr(name.size() + 1, s.size() - name.size() - 2);
    size_t pos = 0;
    while (true) {
      size_t comma = body.find(',', pos);
      out.push_back(std::stoi(body.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  if (s == "C9") return C9_class();
  if (s == "G1") return G1_class();
  if (s == "G2") return G2_class();
  if (s == "G3") return G3_class();
  if (s.rfind("antiK", 0) == 0) {
    auto a = args("antiK");
    if (a.size() != 1) throw std::invalid_argument("antiK takes one argument");
    return anticanonical_class(a[0]);
  }
  if (s.rfind("K", 0) == 0) {
    auto a = args("K");
    if (a.size() != 1) throw std::invalid_argument("K takes one argument");
    return canonical_class(a[0]);
  }
  if (s.rfind("E", 0) == 0) {
    auto a = args("E");
    if (a.size() != 2) throw std::invalid_argument("E takes (i,r)");
    if (a[0] == 0) return line_class(a[1]);
    return point_class(a[0], a[1]);
  }
  if (s.rfind("C", 0) == 0) {
    auto a = args("C");
    if (a.size() != 2) throw std::invalid_argument("C takes (i,r)");
    return elliptic_generating_class(a[0], a[1]);
  }
  throw std::invalid_argument("unknown class constant: " + s);
}

std::uint64_t default_seed()
{
  if (const char* env = std::getenv("PICX_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw std::invalid_argument("PICX_SEED is not an integer");
    }
  }
  return 271828182845ULL;
}

void emit(bool as_json, const json& j, const std::string& text)
{
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string violation_line(const SeparationViolation& v)
{
  return "  witness " + to_text(v.curve) + "  genus " +
         std::to_string(v.genus) + "  H.E=" + std::to_string(v.value) + " < " +
         std::to_string(v.threshold) + "  (delta " + std::to_string(v.delta) +
         ")\n";
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"divisor classes on generic blow-ups of the plane: Weyl "
               "reduction, cohomology prediction, k-cluster separation "
               "tests, finite-field verification"};
  app.require_subcommand(1);
  bool as_json = false;
  int threads = 0;
  app.add_flag("--json", as_json, "emit reports as JSON");
  app.add_option("--threads", threads, "worker threads (0 = library default)");

  std::string cls_a, cls_b, on_curve_str;
  int64_t k = 1, genus_a = 1, d_max = -1, chi_min = 6, bound = -1;
  int rank = 0, delta_max = -1, trials = 3, samples = 500;
  int64_t prime = 32003;
  std::uint64_t seed = default_seed();

  auto* c_chi = app.add_subcommand("chi", "Euler characteristic chi(O(H))");
  c_chi->add_option("class", cls_a)->required();
  auto* c_genus = app.add_subcommand("genus", "arithmetic genus p(H)");
  c_genus->add_option("class", cls_a)->required();
  auto* c_int = app.add_subcommand("intersect", "intersection pairing A.B");
  c_int->add_option("A", cls_a)->required();
  c_int->add_option("B", cls_b)->required();
  auto* c_reduce =
      app.add_subcommand("reduce", "Weyl reduction to canonical form");
  c_reduce->add_option("class", cls_a)->required();
  auto* c_classify =
      app.add_subcommand("classify", "standardness (and rational orbit type)");
  c_classify->add_option("class", cls_a)->required();
  auto* c_dec = app.add_subcommand(
      "decompose", "orthogonal decomposition A + sum n_i F_i");
  c_dec->add_option("class", cls_a)->required();
  auto* c_gen = app.add_subcommand("generating",
                                   "coordinates in the generating classes");
  c_gen->add_option("class", cls_a)->required();
  auto* c_h0 = app.add_subcommand("h0", "predicted h0/h1/speciality");
  c_h0->add_option("class", cls_a)->required();
  auto* c_special = app.add_subcommand("special", "is the class special?");
  c_special->add_option("class", cls_a)->required();
  auto* c_ample = app.add_subcommand("ample", "is the class ample?");
  c_ample->add_option("class", cls_a)->required();
  auto* c_nef = app.add_subcommand("nef", "is the class nef?");
  c_nef->add_option("class", cls_a)->required();

  auto* c_exc = app.add_subcommand(
      "exceptional", "test a class, or enumerate with -r/-d");
  c_exc->add_option("class", cls_a);
  c_exc->add_option("-r,--rank", rank);
  c_exc->add_option("-d,--dmax", d_max);

  auto* c_iso = app.add_subcommand("isolated", "enumerate isolated curves");
  c_iso->add_option("-a,--genus", genus_a)->required();
  c_iso->add_option("-r,--rank", rank)->required();
  c_iso->add_option("-d,--dmax", d_max)->required();

  auto* c_sep = app.add_subcommand("separation",
                                   "k-cluster separation test (conjectural)");
  c_sep->add_option("class", cls_a)->required();
  c_sep->add_option("-k", k)->required();
  c_sep->add_option("--delta-max", delta_max);
  c_sep->add_option("--dmax", d_max);

  auto* c_adj =
      app.add_subcommand("adjunction", "adjunction-theoretic sufficient test");
  c_adj->add_option("class", cls_a)->required();
  c_adj->add_option("-k", k)->required();
  c_adj->add_option("--bound", bound);

  auto* c_sf = app.add_subcommand("search-failures",
                                  "standard classes failing genus-1/2 thresholds");
  c_sf->add_option("-r,--rank", rank)->required();
  c_sf->add_option("-k", k)->required();
  c_sf->add_option("--chi-min", chi_min);
  c_sf->add_option("--dmax", d_max);

  auto* c_vff = app.add_subcommand("verify-ff",
                                   "compare predicted h0 with the finite-field oracle");
  c_vff->add_option("class", cls_a)->required();
  c_vff->add_option("--prime", prime);
  c_vff->add_option("--trials", trials);
  c_vff->add_option("--seed", seed);

  auto* c_sff = app.add_subcommand("separate-ff",
                                   "sample k-clusters over a prime field");
  c_sff->add_option("class", cls_a)->required();
  c_sff->add_option("-k", k)->required();
  c_sff->add_option("--prime", prime);
  c_sff->add_option("--samples", samples);
  c_sff->add_option("--seed", seed);
  c_sff->add_option("--on-curve", on_curve_str,
                    "sample clusters supported on this curve class");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) { // --help
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    if (*c_chi) {
      const auto h = parse_class_arg(cls_a);
      emit(as_json, json{{"chi", euler_characteristic(h)}},
           std::to_string(euler_characteristic(h)) + "\n");
    } else if (*c_genus) {
      const auto h = parse_class_arg(cls_a);
      emit(as_json, json{{"genus", arithmetic_genus(h)}},
           std::to_string(arithmetic_genus(h)) + "\n");
    } else if (*c_int) {
      const auto a = parse_class_arg(cls_a);
      const auto b = parse_class_arg(cls_b);
      emit(as_json, json{{"intersection", intersect(a, b)}},
           std::to_string(intersect(a, b)) + "\n");
    } else if (*c_reduce) {
      const auto r = reduce(parse_class_arg(cls_a));
      std::string text = "canonical: " + to_text(r.canonical) + "\nword: " +
                         json(r.word).dump() +
                         "\nstandardness: " + to_string(r.standardness) + "\n";
      emit(as_json, to_json(r), text);
    } else if (*c_classify) {
      const auto h = parse_class_arg(cls_a);
      const auto s = classify_standardness(h);
      json j{{"standardness", to_string(s)}};
      std::string text = std::string("standardness: ") + to_string(s) + "\n";
      const int64_t sq = self_intersection(h);
      if (sq == -2 - intersect(h, canonical_class(h.rank())) && sq >= -1) {
        const auto kind = classify_rational_orbit(h);
        j["rationalOrbit"] = json{{"tag", to_string(kind.tag)},
                                  {"representative", describe(kind)}};
        text += "rational orbit: " + describe(kind) + "\n";
      }
      emit(as_json, j, text);
    } else if (*c_dec) {
      const auto h = parse_class_arg(cls_a);
      const auto dec = semistandard_decompose(h);
      json j = to_json(dec);
      std::string text = "standard part: " + to_text(dec.standard_part) + "\n";
      for (const auto& [n, f] : dec.pieces)
        text += "  + " + std::to_string(n) + " * " + to_text(f) + "\n";
      if (predicted_h0(h).effective) {
        const auto st = structure_decompose(h);
        j["structure"] = to_json(st);
        text += std::string("structure: ") + to_string(st.kind) +
                (st.base ? " of " + to_text(*st.base) + " (multiple " +
                               std::to_string(st.multiple) + ")"
                         : "") +
                "\n";
      }
      emit(as_json, j, text);
    } else if (*c_gen) {
      const auto g = generating_decomposition(parse_class_arg(cls_a));
      std::string text = "a=" + std::to_string(g.a) + " b=" +
                         std::to_string(g.b) + " c=" + std::to_string(g.c) +
                         " alpha=" + json(g.alpha).dump() + "\n";
      emit(as_json, to_json(g), text);
    } else if (*c_h0) {
      const auto p = predicted_h0(parse_class_arg(cls_a));
      std::string text =
          "h0=" + std::to_string(p.h0) + " h1=" + std::to_string(p.h1) +
          " chi=" + std::to_string(p.chi) +
          (p.effective ? " effective" : " not-effective") +
          (p.special ? " special" : "") +
          (p.conditional ? " (conditional on the speciality conjecture)" : "") +
          "\n";
      emit(as_json, to_json(p), text);
    } else if (*c_special) {
      const bool v = is_special(parse_class_arg(cls_a));
      emit(as_json, json{{"special", v}}, v ? "true\n" : "false\n");
    } else if (*c_ample) {
      const bool v = is_ample(parse_class_arg(cls_a));
      emit(as_json, json{{"ample", v}}, v ? "true\n" : "false\n");
    } else if (*c_nef) {
      const bool v = is_nef(parse_class_arg(cls_a));
      emit(as_json, json{{"nef", v}}, v ? "true\n" : "false\n");
    } else if (*c_exc) {
      if (!cls_a.empty()) {
        const bool v = is_exceptional(parse_class_arg(cls_a));
        emit(as_json, json{{"exceptional", v}}, v ? "true\n" : "false\n");
      } else {
        if (rank < 1 || d_max < 0)
          throw std::invalid_argument("exceptional: give a class or -r/-d");
        const auto list = enumerate_exceptional(rank, d_max);
        json arr = json::array();
        std::string text;
        for (const auto& e : list) {
          arr.push_back(to_json(e));
          text += to_text(e) + "\n";
        }
        emit(as_json, json{{"classes", arr}, {"count", list.size()}}, text);
      }
    } else if (*c_iso) {
      const auto res = enumerate_isolated(genus_a, rank, d_max);
      json arr = json::array();
      std::string text;
      for (const auto& c : res.curves) {
        arr.push_back(to_json(c));
        text += to_text(c.cls) + (c.lattice_level ? "  (lattice-level)" : "") +
                "\n";
      }
      text += res.complete
                  ? "complete below dmax (bound " +
                        std::to_string(res.completeness_bound) + ")\n"
                  : "completeness not certified below dmax\n";
      emit(as_json,
           json{{"classes", arr},
                {"count", res.curves.size()},
                {"complete", res.complete},
                {"completenessBound", res.completeness_bound}},
           text);
    } else if (*c_sep) {
      const auto rep =
          check_separation(parse_class_arg(cls_a), k, delta_max, d_max);
      std::string text = std::string("verdict: ") + to_string(rep.verdict) +
                         "\nchi: " + std::to_string(rep.chi) +
                         "\ncanonical: " + to_text(rep.canonical) + "\n";
      for (const auto& v : rep.violations) text += violation_line(v);
      emit(as_json, to_json(rep), text);
      return rep.verdict == SeparationVerdict::Fails ? 1 : 0;
    } else if (*c_adj) {
      const auto rep = adjunction_check(parse_class_arg(cls_a), k, bound);
      std::string text = std::string("verdict: ") + to_string(rep.verdict) + "\n";
      if (rep.obstruction)
        text += "obstruction: " + to_text(*rep.obstruction) + "\n";
      emit(as_json, to_json(rep), text);
      return rep.verdict == AdjunctionVerdict::Obstructed ? 1 : 0;
    } else if (*c_sf) {
      const auto list = search_failing_classes(rank, k, d_max, chi_min);
      json arr = json::array();
      std::string text;
      for (const auto& f : list) {
        arr.push_back(to_json(f));
        text += to_text(f.cls) + "\n";
        for (const auto& v : f.violations) text += violation_line(v);
      }
      emit(as_json, json{{"classes", arr}, {"count", list.size()}}, text);
    } else if (*c_vff) {
      const auto rep =
          ff::verify_hh_prediction(parse_class_arg(cls_a), prime, trials, seed);
      std::string text = "predicted: " + std::to_string(rep.predicted) +
                         "\nactual: " + std::to_string(rep.actual) +
                         "\nagree: " + (rep.agree ? "true" : "false") +
                         "\nseed: " + std::to_string(rep.seed) + "\n";
      emit(as_json, to_json(rep), text);
      return rep.agree ? 0 : 1;
    } else if (*c_sff) {
      std::optional<DivisorClass> oc;
      if (!on_curve_str.empty()) oc = parse_class_arg(on_curve_str);
      const auto rep = ff::sample_cluster_separation(parse_class_arg(cls_a), k,
                                                     prime, samples, seed, oc);
      std::string text =
          std::string("verdict: ") +
          (rep.failed ? "failure" : "no failure observed") +
          "\nh0: " + std::to_string(rep.h0) +
          "\nseed: " + std::to_string(rep.seed) + "\n";
      if (rep.failure) {
        text += "failing sample " + std::to_string(rep.failure->sample_index) +
                " (" + rep.failure->kind + "), rank drop " +
                std::to_string(rep.failure->rank_drop) + ", points:";
        for (const auto& q : rep.failure->points)
          text += " (" + std::to_string(q[0]) + "," + std::to_string(q[1]) + ")";
        text += "\n";
      }
      emit(as_json, to_json(rep), text);
      return rep.failed ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
