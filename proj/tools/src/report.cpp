#include "fockdim_cli/report.hpp"

#include <cmath>

namespace fockdim::cli {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json complex_json(std::complex<double> z) { return Json::array({number(z.real()), number(z.imag())}); }

Json point_json(std::span<const std::complex<double>> z) {
  Json a = Json::array();
  for (const auto& c : z) a.push_back(complex_json(c));
  return a;
}

namespace {

Json node_json(const std::vector<Node>& tape, std::int32_t i) {
  const Node& nd = tape[static_cast<std::size_t>(i)];
  Json j;
  j["op"] = std::string(op_name(nd.op));
  j["real"] = nd.real;
  switch (nd.op) {
    case Op::Var: j["index"] = nd.ival; break;
    case Op::Const: j["value"] = number(nd.dval); break;
    case Op::IntPow: j["exponent"] = nd.ival; break;
    case Op::RealPow: j["exponent"] = number(nd.dval); break;
    case Op::NormSq: j["count"] = nd.ival; break;
    default: break;
  }
  if (nd.lhs >= 0) {
    Json args = Json::array();
    args.push_back(node_json(tape, nd.lhs));
    if (nd.rhs >= 0) args.push_back(node_json(tape, nd.rhs));
    j["args"] = std::move(args);
  }
  return j;
}

Json notes_json(const std::vector<std::string>& notes) {
  Json a = Json::array();
  for (const auto& n : notes) a.push_back(n);
  return a;
}

}  // namespace

Json ast_json(const WeightExpr& expr) { return node_json(expr.tape(), expr.root()); }

Json matrix_json(const HermitianMatrix& h) {
  Json rows = Json::array();
  for (int j = 0; j < h.n(); ++j) {
    Json row = Json::array();
    for (int k = 0; k < h.n(); ++k) row.push_back(complex_json(h(j, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json shell_json(const Shell& s) {
  return {{"m", s.m}, {"r_lo", number(s.r_lo)}, {"r_hi", number(s.r_hi)},
          {"mass", number(s.mass)}, {"error", number(s.error)}};
}

Json estimate_json(const MeasureEstimate& e) {
  Json shells = Json::array();
  for (const Shell& s : e.shells) shells.push_back(shell_json(s));
  return {{"classification", std::string(to_string(e.classification))},
          {"value", number(e.value)},
          {"abs_error", number(e.abs_error)},
          {"tail_ratio", number(e.tail_ratio)},
          {"rule", e.rule},
          {"shells", std::move(shells)}};
}

Json atoms_json(const AtomList& atoms) {
  Json a = Json::array();
  for (const Atom& at : atoms)
    a.push_back({{"location", complex_json(at.location)}, {"mass", number(at.mass)}});
  return a;
}

Json dim_json(const DimReport& r) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["dim"] = r.verdict == DimVerdict::FiniteDim || r.verdict == DimVerdict::ZeroDim ? Json(r.dim)
                                                                                     : Json(nullptr);
  j["mass_c"] = number(r.mass_c);
  j["mass_continuous"] = estimate_json(r.mass_continuous);
  j["atoms_folded"] = atoms_json(r.atoms_folded);
  j["atoms_remainder"] = atoms_json(r.atoms_remainder);
  j["evidence"] = notes_json(r.evidence);
  return j;
}

Json verdict_json(const Verdict& v) {
  Json shells = Json::array();
  for (const Shell& s : v.shell_log) shells.push_back(shell_json(s));
  Json j;
  j["classification"] = std::string(to_string(v.classification));
  j["value"] = v.classification == Convergence::Converges ? number(v.value) : Json(nullptr);
  j["error"] = v.classification == Convergence::Converges ? number(v.error) : Json(nullptr);
  j["rule"] = v.rule;
  if (v.direction_tail)
    j["direction_tail"] = {{"index", number(v.direction_tail->index)},
                           {"std_error", number(v.direction_tail->std_error)},
                           {"order_stats", v.direction_tail->order_stats}};
  j["heavy_tail"] = v.heavy_tail;
  j["shells"] = std::move(shells);
  return j;
}

Json sample_json(const Sample& s) {
  return {{"point", point_json(s.point)},
          {"point_is_direction", s.point_is_direction},
          {"radius", number(s.radius)},
          {"log2_radius", number(s.log2_radius)},
          {"statistic", number(s.statistic)}};
}

Json criterion_json(const CriterionReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = number(v);
  Json samples = Json::array();
  for (const Sample& s : r.samples) samples.push_back(sample_json(s));
  Json j;
  j["criterion"] = r.criterion;
  j["verdict"] = std::string(to_string(r.verdict));
  j["witness"] = r.witness ? sample_json(*r.witness) : Json(nullptr);
  j["worst"] = r.worst ? sample_json(*r.worst) : Json(nullptr);
  j["fitted_limit"] = r.fitted_limit ? number(*r.fitted_limit) : Json(nullptr);
  j["parameters"] = std::move(params);
  j["notes"] = notes_json(r.notes);
  j["samples"] = std::move(samples);
  return j;
}

Json separable_json(const SeparableReport& r) {
  Json comps = Json::array();
  for (const DimReport& c : r.components) comps.push_back(dim_json(c));
  return {{"combined", dim_json(r.combined)}, {"components", std::move(comps)}};
}

Json counterexample_json(const CounterexampleReport& r) {
  return {{"separable", separable_json(r.separable)},
          {"monge_ampere", estimate_json(r.monge_ampere)},
          {"contradiction", r.contradiction},
          {"notes", notes_json(r.notes)}};
}

Json teps_json(const TEpsEstimate& t) {
  return {{"eps", number(t.eps)}, {"estimate", number(t.estimate)}, {"std_error", number(t.std_error)}};
}

Json singular_json(const SingularEstimate& s) {
  Json levels = Json::array();
  for (const LevelSum& l : s.levels)
    levels.push_back({{"s", l.s}, {"count", l.count}, {"contribution", number(l.contribution)}});
  return {{"estimate", estimate_json(s.estimate)},
          {"level_ratio", number(s.level_ratio)},
          {"reference_ratio", number(s.reference_ratio)},
          {"tail_index", number(s.tail.index)},
          {"tail_index_se", number(s.tail.std_error)},
          {"heavy_tail", s.heavy_tail},
          {"levels", std::move(levels)}};
}

Json lelong_json(const LelongEstimate& l) {
  Json radii = Json::array();
  Json sups = Json::array();
  for (double r : l.radii) radii.push_back(number(r));
  for (double v : l.sup_log) sups.push_back(number(v));
  return {{"value", number(l.value)},
          {"slope_se", number(l.fit.slope_se)},
          {"radii", std::move(radii)},
          {"sup_log", std::move(sups)}};
}

Json envelope(const std::string& command, const std::string& status, Json input, Json result) {
  return {{"schema", kSchemaVersion},
          {"command", command},
          {"status", status},
          {"input", std::move(input)},
          {"result", std::move(result)}};
}

}  // namespace fockdim::cli
