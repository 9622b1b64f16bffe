#include "fockdim_cli/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "fockdim/criteria.hpp"
#include "fockdim/error.hpp"
#include "fockdim/hermitian.hpp"
#include "fockdim/membership.hpp"
#include "fockdim/riesz.hpp"
#include "fockdim/sphere.hpp"
#include "fockdim/wirtinger.hpp"
#include "fockdim_cli/config.hpp"
#include "fockdim_cli/examples.hpp"
#include "fockdim_cli/report.hpp"

namespace fockdim::cli {

namespace {

// ---------------------------------------------------------------- argument parsing

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? p : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

double parse_real(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last)
    throw InvalidArgument("invalid " + std::string(what) + " '" + t + "'");
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw InvalidArgument("invalid " + std::string(what) + " '" + t + "'");
  return v;
}

// a, bi, a+bi, a-bi, i, -i
std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw InvalidArgument("empty complex number");
  if (s.back() != 'i') return parse_real(s, "complex number");
  s.pop_back();
  // Split at the last sign that is not an exponent sign.
  std::size_t split_at = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split_at = i;
      break;
    }
  auto imag = [&](std::string t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, "complex number");
  };
  if (split_at == std::string::npos) return {0.0, imag(s)};
  return {parse_real(s.substr(0, split_at), "complex number"), imag(s.substr(split_at))};
}

std::vector<std::complex<double>> parse_point(std::string_view text) {
  std::vector<std::complex<double>> z;
  for (const auto& part : split(text, ',')) z.push_back(parse_complex(part));
  return z;
}

Atom parse_atom(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw InvalidArgument("atom must be written LOCATION:MASS");
  return {parse_complex(text.substr(0, colon)), parse_real(text.substr(colon + 1), "atom mass")};
}

std::vector<double> parse_reals(std::string_view text, std::string_view what) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_real(part, what));
  return out;
}

std::vector<int> parse_ints(std::string_view text, std::string_view what) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_int(part, what));
  return out;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  const double v = parse_real(text, what);
  if (!(v >= 1) || v > 1e12 || v != std::floor(v))
    throw InvalidArgument(std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

// "3:7" -> 2^-3, ..., 2^-7
std::vector<double> parse_eps_sweep(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw InvalidArgument("eps sweep must be written FIRST:LAST");
  const int a = parse_int(parts[0], "eps sweep");
  const int b = parse_int(parts[1], "eps sweep");
  if (a < 0 || b < a || b > 60) throw InvalidArgument("eps sweep needs 0 <= FIRST <= LAST <= 60");
  std::vector<double> eps;
  for (int j = a; j <= b; ++j) eps.push_back(std::ldexp(1.0, -j));
  return eps;
}

// ---------------------------------------------------------------- output

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string cell(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const Table& t) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i]);
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

Table shells_table(const std::vector<Shell>& shells) {
  Table t{{"m", "r_lo", "r_hi", "mass", "error"}, {}};
  for (const Shell& s : shells)
    t.rows.push_back({std::to_string(s.m), cell(s.r_lo), cell(s.r_hi), cell(s.mass), cell(s.error)});
  return t;
}

Table samples_table(const std::vector<CriterionReport>& reports) {
  Table t{{"criterion", "M", "radius", "log2_radius", "statistic"}, {}};
  for (const auto& rep : reports) {
    std::string M;
    for (const auto& [k, v] : rep.parameters)
      if (k == "M") M = cell(v);
    for (const Sample& s : rep.samples)
      t.rows.push_back({rep.criterion, M, cell(s.radius), cell(s.log2_radius), cell(s.statistic)});
  }
  return t;
}

void write_pretty(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << pad << k << ":\n";
      write_pretty(out, v, indent + 2);
    } else if (v.is_array()) {
      const bool scalar = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      const bool bulky = k == "samples" || k == "shells" || k == "levels" || k == "monomials";
      if (k == "notes" || k == "evidence") {
        out << pad << k << ":\n";
        for (const auto& e : v) out << pad << "  - " << (e.is_string() ? e.get<std::string>() : e.dump()) << '\n';
      } else if ((scalar && v.size() <= 8) || (!bulky && v.dump().size() <= 80)) {
        out << pad << k << ": " << v.dump() << '\n';
      } else if (!scalar && !bulky && v.size() <= 16) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          out << pad << k << "[" << i << "]:\n";
          if (v[i].is_object()) write_pretty(out, v[i], indent + 2);
          else out << pad << "  " << v[i].dump() << '\n';
        }
      } else {
        out << pad << k << ": [" << v.size() << " entries]\n";
      }
    } else {
      out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

enum class Format { Json, Csv, Pretty };

struct Outcome {
  int code = kExitOk;
  Json report;
  Table table;
  bool has_table = false;
};

void emit(std::ostream& out, Format f, const Outcome& o) {
  switch (f) {
    case Format::Json: out << o.report.dump(2) << '\n'; break;
    case Format::Csv:
      if (!o.has_table) throw InvalidArgument("this command has no CSV output");
      write_csv(out, o.table);
      break;
    case Format::Pretty: {
      out << o.report["command"].get<std::string>() << ": " << o.report["status"].get<std::string>() << '\n';
      Json rest = o.report["result"];
      write_pretty(out, rest, 2);
      break;
    }
  }
}

// ---------------------------------------------------------------- options

struct Options {
  unsigned threads = 1;
  std::string config;
  std::string format = "json";

  std::string weight;
  bool dump_ast = false;
  std::string at;
  int n = 0;
  std::vector<std::string> atoms;
  bool exact = false;
  std::string monomial;
  std::string g;
  int lower_bound = -1;
  std::string criterion;
  std::vector<double> M;
  double R = 0.0;
  double r_max = 0.0;
  std::string radii;
  std::vector<std::string> components;
  bool counterexample = false;
  int k = 3;
  int sphere_n = 2;
  std::string eps_sweep;
  std::string samples;
  bool singular = false;
  std::string lelong;
  std::vector<std::string> only;
  bool list = false;

  // Overrides; applied after the config file.
  std::uint64_t seed = 0;
  int n_theta = 0;
  double rel_tol = 0.0;
  int m_max = 0;
  double margin = 0.0;
  int n_sphere = 0;
  int n_dirs = 0;
};

struct Flags {
  CLI::Option* seed = nullptr;
  CLI::Option* n_theta = nullptr;
  CLI::Option* rel_tol = nullptr;
  CLI::Option* m_max = nullptr;
  CLI::Option* margin = nullptr;
  CLI::Option* n_sphere = nullptr;
  CLI::Option* n_dirs = nullptr;
  CLI::Option* samples = nullptr;
  CLI::Option* exact = nullptr;
  CLI::Option* M = nullptr;
  CLI::Option* R = nullptr;
};

RunConfig build_config(const Options& o, const std::vector<Flags>& flags) {
  RunConfig cfg;
  if (!o.config.empty()) load_config_file(o.config, cfg);
  for (const Flags& f : flags) {
    if (f.seed && f.seed->count()) {
      cfg.mc.seed = o.seed;
      cfg.quad.seed = o.seed;
    }
    if (f.n_theta && f.n_theta->count()) cfg.quad.n_theta = o.n_theta;
    if (f.rel_tol && f.rel_tol->count()) cfg.quad.rel_tol = o.rel_tol;
    if (f.m_max && f.m_max->count()) cfg.quad.m_max = o.m_max;
    if (f.margin && f.margin->count()) cfg.quad.margin = o.margin;
    if (f.n_sphere && f.n_sphere->count()) cfg.quad.n_sphere = o.n_sphere;
    if (f.n_dirs && f.n_dirs->count()) cfg.criteria.n_dirs = o.n_dirs;
    if (f.samples && f.samples->count()) cfg.mc.samples = parse_count(o.samples, "--samples");
    if (f.exact && f.exact->count()) cfg.quad.exact = o.exact;
  }
  if (o.threads < 1) throw InvalidArgument("--threads must be at least 1");
  cfg.quad.exec.threads = o.threads;
  cfg.criteria.exec.threads = o.threads;
  return cfg;
}

Json quad_json(const QuadConfig& q) {
  return {{"n_theta", q.n_theta}, {"rel_tol", number(q.rel_tol)}, {"m_min", q.m_min},
          {"m_max", q.m_max}, {"infinity_cutoff", number(q.infinity_cutoff)},
          {"atom_excision", number(q.atom_excision)}, {"margin", number(q.margin)},
          {"exact", q.exact}, {"n_sphere", q.n_sphere}, {"seed", q.seed}};
}

Json criteria_cfg_json(const CriteriaConfig& c) {
  return {{"n_dirs", c.n_dirs}, {"growth_threshold", number(c.growth_threshold)},
          {"slope_threshold", number(c.slope_threshold)}, {"psd_rel_tol", number(c.psd_rel_tol)},
          {"r_max_octaves", c.r_max_octaves}, {"max_log2_R", number(c.max_log2_R)}};
}

// ---------------------------------------------------------------- commands

WeightExpr require_weight(const Options& o) {
  if (o.weight.empty()) throw InvalidArgument("--weight is required");
  return parse(o.weight);
}

Outcome cmd_parse(const Options& o) {
  const WeightExpr e = require_weight(o);
  Json result = {{"canonical", to_string(e)}, {"nvars", e.nvars()}, {"radial_profile", e.is_radial_profile()},
                 {"nodes", e.tape().size()}};
  if (o.dump_ast) result["ast"] = ast_json(e);
  Outcome out;
  out.report = envelope("parse", "ok", {{"weight", o.weight}}, std::move(result));
  out.table = {{"key", "value"},
               {{"canonical", to_string(e)},
                {"nvars", std::to_string(e.nvars())},
                {"radial_profile", e.is_radial_profile() ? "true" : "false"}}};
  out.has_table = true;
  return out;
}

Outcome cmd_levi(const Options& o) {
  WeightExpr e = require_weight(o);
  if (o.at.empty()) throw InvalidArgument("--at is required");
  auto z = parse_point(o.at);
  if (e.is_radial_profile()) {
    e = radial_weight(e, static_cast<int>(z.size()));
  } else if (static_cast<int>(z.size()) > e.nvars()) {
    e = e.widened(static_cast<int>(z.size()));
  } else if (static_cast<int>(z.size()) < e.nvars()) {
    throw InvalidArgument("--at has " + std::to_string(z.size()) + " coordinates but the weight uses " +
                          std::to_string(e.nvars()));
  }
  const HermitianMatrix L = levi(e, z);
  const auto ev = eigenvalues(L);
  Json evj = Json::array();
  for (double v : ev) evj.push_back(number(v));
  Json result = {{"matrix", matrix_json(L)}, {"eigenvalues", std::move(evj)},
                 {"min_eigenvalue", number(ev.front())}, {"det", number(det(L))},
                 {"psd", is_psd(L)}};
  Outcome out;
  out.report = envelope("levi", "ok", {{"weight", o.weight}, {"at", point_json(z)}}, std::move(result));
  out.table.header = {"j", "k", "re", "im"};
  for (int j = 0; j < L.n(); ++j)
    for (int k = 0; k < L.n(); ++k)
      out.table.rows.push_back({std::to_string(j + 1), std::to_string(k + 1), cell(L(j, k).real()),
                                cell(L(j, k).imag())});
  out.has_table = true;
  return out;
}

int dim_exit(DimVerdict v) { return v == DimVerdict::Inconclusive ? kExitInconclusive : kExitOk; }

Outcome cmd_dim1d(const Options& o, const RunConfig& cfg) {
  const WeightExpr e = require_weight(o);
  if (e.is_radial_profile() || e.nvars() != 1)
    throw InvalidArgument("dim1d needs a weight in the single variable z");
  AtomList atoms;
  for (const auto& a : o.atoms) atoms.push_back(parse_atom(a));
  const DimReport d = fock_dimension(e, atoms, cfg.quad);
  Outcome out;
  out.code = dim_exit(d.verdict);
  out.report = envelope("dim1d", std::string(to_string(d.verdict)),
                        {{"weight", o.weight}, {"atoms", atoms_json(atoms)}, {"quadrature", quad_json(cfg.quad)}},
                        dim_json(d));
  out.table = shells_table(d.mass_continuous.shells);
  out.has_table = true;
  return out;
}

int convergence_exit(Convergence c) {
  switch (c) {
    case Convergence::Converges: return kExitOk;
    case Convergence::Diverges: return kExitNegative;
    case Convergence::Inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

Outcome cmd_member(const Options& o, const RunConfig& cfg) {
  const WeightExpr psi = require_weight(o);
  Json input = {{"weight", o.weight}, {"quadrature", quad_json(cfg.quad)}};
  Outcome out;
  if (o.lower_bound >= 0) {
    const LowerBound lb = dimension_lower_bound(psi, o.lower_bound, cfg.quad);
    Json monos = Json::array();
    out.table.header = {"alpha", "classification"};
    for (const auto& m : lb.monomials) {
      Json alpha = Json::array();
      std::string a;
      for (int x : m.alpha) {
        alpha.push_back(x);
        a += (a.empty() ? "" : " ") + std::to_string(x);
      }
      monos.push_back({{"alpha", std::move(alpha)}, {"classification", std::string(to_string(m.classification))}});
      out.table.rows.push_back({a, std::string(to_string(m.classification))});
    }
    input["max_total_degree"] = o.lower_bound;
    out.report = envelope("member", "ok", std::move(input),
                          {{"lower_bound", lb.count}, {"monomials", std::move(monos)}});
    out.has_table = true;
    return out;
  }
  Verdict v;
  if (!o.monomial.empty()) {
    if (!o.g.empty()) throw InvalidArgument("--monomial and --g are mutually exclusive");
    const auto alpha = parse_ints(o.monomial, "multi-index");
    input["monomial"] = alpha;
    v = monomial_in_space(psi, alpha, cfg.quad);
  } else {
    const WeightExpr g = o.g.empty() ? WeightExpr::constant(1.0, psi.nvars()) : parse(o.g);
    input["g"] = o.g.empty() ? "1" : o.g;
    v = weighted_integral(g, psi, cfg.quad);
  }
  out.code = convergence_exit(v.classification);
  out.report = envelope("member", std::string(to_string(v.classification)), std::move(input), verdict_json(v));
  out.table = shells_table(v.shell_log);
  out.has_table = true;
  return out;
}

int criterion_exit(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::Satisfied: return kExitOk;
    case CriterionVerdict::Violated: return kExitNegative;
    case CriterionVerdict::Inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

CriterionVerdict combine(const std::vector<CriterionReport>& reps) {
  bool all_sat = true;
  for (const auto& r : reps) {
    if (r.verdict == CriterionVerdict::Violated) return CriterionVerdict::Violated;
    all_sat = all_sat && r.verdict == CriterionVerdict::Satisfied;
  }
  return all_sat ? CriterionVerdict::Satisfied : CriterionVerdict::Inconclusive;
}

Outcome criteria_outcome(const std::string& command, const std::string& criterion, Json input,
                         const std::vector<CriterionReport>& reps, Json extra = Json::object()) {
  const CriterionVerdict v = combine(reps);
  Json list = Json::array();
  for (const auto& r : reps) list.push_back(criterion_json(r));
  Json result = {{"criterion", criterion}, {"verdict", std::string(to_string(v))}, {"reports", std::move(list)}};
  for (auto& [k, val] : extra.items()) result[k] = val;
  Outcome out;
  out.code = criterion_exit(v);
  out.report = envelope(command, std::string(to_string(v)), std::move(input), std::move(result));
  out.table = samples_table(reps);
  out.has_table = true;
  return out;
}

std::vector<double> radii_or(const Options& o, std::vector<double> fallback) {
  return o.radii.empty() ? fallback : parse_reals(o.radii, "radius");
}

Outcome cmd_radial(const Options& o, const RunConfig& cfg, const std::string& command) {
  const WeightExpr phi = require_weight(o);
  if (!phi.is_radial_profile()) throw InvalidArgument("the radial criterion needs a profile phi(t)");
  const int n = o.n > 0 ? o.n : 2;
  const auto schedule = radii_or(o, default_radial_schedule());
  const CriterionReport rep = radial_criterion(phi, schedule, cfg.criteria);
  const MeasureEstimate ma = monge_ampere_mass(phi, n, schedule, cfg.criteria);
  Json input = {{"weight", o.weight}, {"n", n}, {"criteria", criteria_cfg_json(cfg.criteria)}};
  return criteria_outcome(command, "radial", std::move(input), {rep}, {{"monge_ampere", estimate_json(ma)}});
}

// Splits a top-level sum into one-variable summands; each becomes a weight in z.
std::vector<std::pair<std::string, WeightExpr>> split_separable(const WeightExpr& psi) {
  const auto& tape = psi.tape();
  std::vector<std::int32_t> terms;
  std::vector<bool> negated;
  std::function<void(std::int32_t, bool)> collect = [&](std::int32_t i, bool neg) {
    const Node& nd = tape[static_cast<std::size_t>(i)];
    if (nd.op == Op::Add) {
      collect(nd.lhs, neg);
      collect(nd.rhs, neg);
    } else if (nd.op == Op::Sub) {
      collect(nd.lhs, neg);
      collect(nd.rhs, !neg);
    } else {
      terms.push_back(i);
      negated.push_back(neg);
    }
  };
  collect(psi.root(), false);

  std::vector<std::vector<Node>> parts(static_cast<std::size_t>(psi.nvars()));
  std::vector<bool> used(parts.size(), false);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    int var = 0;
    std::vector<Node> sub;
    std::function<std::int32_t(std::int32_t)> copy = [&](std::int32_t i) -> std::int32_t {
      Node nd = tape[static_cast<std::size_t>(i)];
      if (nd.op == Op::Var) {
        if (var != 0 && var != nd.ival) throw InvalidArgument("summand mixes variables; the weight is not separable");
        var = nd.ival;
        nd.ival = 1;
      } else if (nd.op == Op::NormSq) {
        if (nd.ival != 1 || (var != 0 && var != 1)) throw InvalidArgument("normsq couples variables; the weight is not separable");
        var = 1;
      }
      if (nd.lhs >= 0) nd.lhs = copy(nd.lhs);
      if (nd.rhs >= 0) nd.rhs = copy(nd.rhs);
      sub.push_back(nd);
      return static_cast<std::int32_t>(sub.size()) - 1;
    };
    copy(terms[t]);
    if (negated[t]) {
      Node neg;
      neg.op = Op::Neg;
      neg.real = true;
      neg.lhs = static_cast<std::int32_t>(sub.size()) - 1;
      sub.push_back(neg);
    }
    // Constants carry no variable; attach them to z1.
    const auto slot = static_cast<std::size_t>(var == 0 ? 0 : var - 1);
    auto& dst = parts[slot];
    if (dst.empty()) {
      dst = std::move(sub);
    } else {
      const auto offset = static_cast<std::int32_t>(dst.size());
      for (Node nd : sub) {
        if (nd.lhs >= 0) nd.lhs += offset;
        if (nd.rhs >= 0) nd.rhs += offset;
        dst.push_back(nd);
      }
      Node add;
      add.op = Op::Add;
      add.real = true;
      add.lhs = offset - 1;
      add.rhs = static_cast<std::int32_t>(dst.size()) - 1;
      dst.push_back(add);
    }
    used[slot] = true;
  }
  std::vector<std::pair<std::string, WeightExpr>> out;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (!used[j]) throw InvalidArgument("z" + std::to_string(j + 1) + " does not appear in the weight");
    out.emplace_back("z" + std::to_string(j + 1), WeightExpr(std::move(parts[j])));
  }
  return out;
}

Outcome cmd_separable(const Options& o, const RunConfig& cfg, const std::string& command) {
  Outcome out;
  if (o.counterexample) {
    const CounterexampleReport c = counterexample_report(cfg.quad);
    out.code = dim_exit(c.separable.combined.verdict);
    out.report = envelope(command, std::string(to_string(c.separable.combined.verdict)),
                          {{"builtin", "counterexample"}, {"quadrature", quad_json(cfg.quad)}},
                          {{"criterion", "separable"}, {"verdict", std::string(to_string(c.separable.combined.verdict))},
                           {"counterexample", counterexample_json(c)}});
    out.table.header = {"component", "verdict", "dim", "mass_c"};
    for (std::size_t i = 0; i < c.separable.components.size(); ++i) {
      const DimReport& d = c.separable.components[i];
      out.table.rows.push_back({std::to_string(i + 1), std::string(to_string(d.verdict)),
                                std::to_string(d.dim), cell(d.mass_c)});
    }
    out.has_table = true;
    return out;
  }
  std::vector<SeparableComponent> comps;
  Json labels = Json::array();
  if (!o.components.empty()) {
    if (!o.weight.empty()) throw InvalidArgument("--weight and --component are mutually exclusive");
    for (const auto& c : o.components) {
      const WeightExpr e = parse(c);
      if (e.is_radial_profile() || e.nvars() != 1)
        throw InvalidArgument("each --component must be a weight in the single variable z");
      comps.push_back({c, e, {}, {}});
      labels.push_back(c);
    }
  } else {
    for (auto& [label, e] : split_separable(require_weight(o))) {
      labels.push_back(label + ": " + to_string(e));
      comps.push_back({label, e, {}, {}});
    }
  }
  const SeparableReport rep = separable_dimension(comps, cfg.quad);
  out.code = dim_exit(rep.combined.verdict);
  Json input = {{"components", std::move(labels)}, {"quadrature", quad_json(cfg.quad)}};
  if (!o.weight.empty()) input["weight"] = o.weight;
  out.report = envelope(command, std::string(to_string(rep.combined.verdict)), std::move(input),
                        {{"criterion", "separable"}, {"verdict", std::string(to_string(rep.combined.verdict))},
                         {"separable", separable_json(rep)}});
  out.table.header = {"component", "verdict", "dim", "mass_c"};
  for (std::size_t i = 0; i < rep.components.size(); ++i) {
    const DimReport& d = rep.components[i];
    out.table.rows.push_back({comps[i].label, std::string(to_string(d.verdict)), std::to_string(d.dim), cell(d.mass_c)});
  }
  out.has_table = true;
  return out;
}

Outcome cmd_check(const Options& o, const RunConfig& cfg, const Flags& f) {
  const std::string& c = o.criterion;
  if (c == "radial") return cmd_radial(o, cfg, "check");
  if (c == "separable") return cmd_separable(o, cfg, "check");
  const WeightExpr psi = require_weight(o);
  Json input = {{"weight", o.weight}, {"criteria", criteria_cfg_json(cfg.criteria)}};
  if (c == "shigekawa") {
    const auto radii = radii_or(o, default_shigekawa_radii());
    return criteria_outcome("check", c, std::move(input), {shigekawa_check(psi, radii, cfg.criteria)});
  }
  // psh
  const std::vector<double> Ms = f.M->count() ? o.M : std::vector<double>{1.0, 10.0, 100.0, 1000.0};
  std::vector<CriterionReport> reps;
  for (double M : Ms) {
    if (f.R->count())
      reps.push_back(psh_outside_compact(psi, M, o.R, o.r_max, cfg.criteria));
    else
      reps.push_back(psh_outside_compact_scan(psi, M, cfg.criteria));
  }
  input["M"] = Ms;
  input["R"] = f.R->count() ? Json(o.R) : Json("scan");
  return criteria_outcome("check", c, std::move(input), reps);
}

Outcome cmd_sphere(const Options& o, const RunConfig& cfg) {
  if (o.k < 2) throw InvalidArgument("--k must be at least 2");
  if (o.sphere_n < 2) throw InvalidArgument("--n must be at least 2");
  const PowerSum p{o.k, o.sphere_n};
  const Execution exec{o.threads};
  Json input = {{"k", o.k}, {"n", o.sphere_n}, {"samples", cfg.mc.samples}, {"seed", cfg.mc.seed}};
  Json result = Json::object();
  Outcome out;
  std::string status = "ok";
  const bool want_sweep = !o.eps_sweep.empty() || (!o.singular && o.lelong.empty());
  if (want_sweep) {
    const auto eps = parse_eps_sweep(o.eps_sweep.empty() ? "3:7" : o.eps_sweep);
    const auto sweep = t_eps_sweep(p, eps, cfg.mc.samples, cfg.mc.seed, exec);
    Json rows = Json::array();
    out.table.header = {"eps", "estimate", "std_error"};
    for (const auto& t : sweep) {
      rows.push_back(teps_json(t));
      out.table.rows.push_back({cell(t.eps), cell(t.estimate), cell(t.std_error)});
    }
    out.has_table = true;
    result["sweep"] = std::move(rows);
    if (sweep.size() >= 2) {
      const LineFit fit = t_eps_slope(sweep);
      result["slope"] = number(fit.slope);
      result["slope_se"] = number(fit.slope_se);
    }
    input["eps_sweep"] = o.eps_sweep.empty() ? "3:7" : o.eps_sweep;
  }
  if (o.singular) {
    const SingularEstimate s = singular_sphere_integral(p, cfg.mc.samples, cfg.mc.seed, exec);
    result["singular"] = singular_json(s);
    status = std::string(to_string(s.estimate.classification));
    if (s.estimate.classification == MassClass::Inconclusive) out.code = kExitInconclusive;
    if (!out.has_table) {
      out.table.header = {"s", "count", "contribution"};
      for (const auto& l : s.levels)
        out.table.rows.push_back({std::to_string(l.s), std::to_string(l.count), cell(l.contribution)});
      out.has_table = true;
    }
  }
  if (!o.lelong.empty()) {
    const auto a = parse_point(o.lelong);
    if (static_cast<int>(a.size()) != o.sphere_n) throw InvalidArgument("--lelong point must have n coordinates");
    const auto radii = o.radii.empty() ? std::vector<double>{} : parse_reals(o.radii, "radius");
    const LelongEstimate l = lelong_estimate(p, a, radii, cfg.mc.seed, cfg.mc.boundary_samples);
    result["lelong"] = lelong_json(l);
    input["lelong_at"] = point_json(a);
    if (!out.has_table) {
      out.table.header = {"radius", "sup_log"};
      for (std::size_t i = 0; i < l.radii.size(); ++i) out.table.rows.push_back({cell(l.radii[i]), cell(l.sup_log[i])});
      out.has_table = true;
    }
  }
  out.report = envelope("sphere", status, std::move(input), std::move(result));
  return out;
}

Outcome cmd_examples(const Options& o) {
  Outcome out;
  if (o.list) {
    Json ids = example_ids();
    out.report = envelope("examples", "ok", Json::object(), {{"ids", ids}});
    out.table.header = {"id"};
    for (const auto& id : example_ids()) out.table.rows.push_back({id});
    out.has_table = true;
    return out;
  }
  const auto reps = examples_suite(o.only, Execution{o.threads});
  Json list = Json::array();
  int passed = 0;
  out.table.header = {"id", "expected", "computed", "pass"};
  for (const auto& r : reps) {
    passed += r.pass ? 1 : 0;
    list.push_back({{"id", r.id}, {"expected", r.expected}, {"computed", r.computed}, {"pass", r.pass},
                    {"detail", r.detail}});
    out.table.rows.push_back({r.id, r.expected, r.computed, r.pass ? "true" : "false"});
  }
  out.has_table = true;
  const int failed = static_cast<int>(reps.size()) - passed;
  out.code = failed == 0 ? kExitOk : kExitNegative;
  Json input = {{"only", o.only}};
  out.report = envelope("examples", failed == 0 ? "pass" : "fail", std::move(input),
                        {{"passed", passed}, {"failed", failed}, {"examples", std::move(list)}});
  return out;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dimension of weighted Fock spaces: Riesz masses, Levi matrices, membership and "
               "plurisubharmonicity criteria.",
               "fockdim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Expand all help");
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (results do not depend on it)")->check(CLI::Range(1u, 1024u));
  app.add_option("--config", o.config, "TOML file with [quadrature], [mc] and [criteria] tables")->check(CLI::ExistingFile);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));

  std::vector<Flags> flags;
  auto quad_flags = [&](CLI::App* sc, Flags& f) {
    f.n_theta = sc->add_option("--n-theta", o.n_theta, "Angular nodes per ring");
    f.rel_tol = sc->add_option("--rel-tol", o.rel_tol, "Relative tolerance of the radial quadrature");
    f.m_max = sc->add_option("--m-max", o.m_max, "Last dyadic shell exponent");
    f.margin = sc->add_option("--margin", o.margin, "Inconclusive band around multiples of 4 pi (fraction)");
  };

  auto* parse_cmd = app.add_subcommand("parse", "Parse a weight and print its canonical form");
  parse_cmd->add_option("--weight", o.weight, "Weight expression")->required();
  parse_cmd->add_flag("--dump-ast", o.dump_ast, "Include the expression tree");
  parse_cmd->footer("CSV columns: key,value");

  auto* levi_cmd = app.add_subcommand("levi", "Levi matrix of a weight at a point");
  levi_cmd->add_option("--weight", o.weight, "Weight on C^n, or a profile phi(t) taken as phi(|z|^2)")->required();
  levi_cmd->add_option("--at", o.at, "Point, e.g. \"1+2i,0\"")->required();
  levi_cmd->footer("CSV columns: j,k,re,im");

  Flags dim_flags;
  auto* dim_cmd = app.add_subcommand("dim1d", "Dimension of the Fock space of a weight on C");
  dim_cmd->add_option("--weight", o.weight, "Weight in z")->required();
  dim_cmd->add_option("--atom", o.atoms, "Riesz atom LOCATION:MASS (repeatable)");
  dim_flags.exact = dim_cmd->add_flag("--exact", o.exact, "Treat the mass as exact and snap to the 4 pi lattice");
  quad_flags(dim_cmd, dim_flags);
  dim_cmd->footer("CSV columns: m,r_lo,r_hi,mass,error (continuous Riesz mass per dyadic shell)");

  Flags member_flags;
  auto* member_cmd = app.add_subcommand("member", "Classify the integral of g e^(-psi) over C^n");
  member_cmd->add_option("--weight", o.weight, "Weight psi")->required();
  member_cmd->add_option("--monomial", o.monomial, "Multi-index alpha, g = |z^alpha|^2, e.g. 2,0");
  member_cmd->add_option("--g", o.g, "Non-negative integrand g (default 1)");
  member_cmd->add_option("--lower-bound", o.lower_bound, "Count monomials of degree <= D in the space")
      ->check(CLI::Range(0, 20));
  member_flags.seed = member_cmd->add_option("--seed", o.seed, "Seed of the sphere directions (n >= 2)");
  member_flags.n_sphere = member_cmd->add_option("--n-sphere", o.n_sphere, "Sphere directions (n >= 2)");
  quad_flags(member_cmd, member_flags);
  member_cmd->footer("CSV columns: m,r_lo,r_hi,mass,error (shell integrals); with --lower-bound: alpha,classification");

  Flags check_flags;
  auto* check_cmd = app.add_subcommand("check", "Run a dimension criterion");
  check_cmd->add_option("--criterion", o.criterion, "Criterion")
      ->required()
      ->check(CLI::IsMember({"shigekawa", "psh", "radial", "separable"}));
  check_cmd->add_option("--weight", o.weight, "Weight (a profile phi(t) for radial)");
  check_flags.M = check_cmd->add_option("--M", o.M, "psh: comparison weights M log|z|^2 (default 1 10 100 1000)");
  check_flags.R = check_cmd->add_option("--R", o.R, "psh: inner radius; omitted means scan for R")->check(CLI::PositiveNumber);
  check_cmd->add_option("--r-max", o.r_max, "psh: outer radius (default R * 2^10)");
  check_cmd->add_option("--radii", o.radii, "shigekawa/radial: comma-separated radii");
  check_cmd->add_option("--n", o.n, "radial: dimension for the Monge-Ampere mass (default 2)");
  check_cmd->add_option("--component", o.components, "separable: one-variable component in z (repeatable)");
  check_cmd->add_flag("--counterexample", o.counterexample, "separable: built-in |z1|^2 + psi_2(z2) example");
  check_flags.n_dirs = check_cmd->add_option("--n-dirs", o.n_dirs, "Sampled sphere directions");
  quad_flags(check_cmd, check_flags);
  check_cmd->footer("CSV columns: criterion,M,radius,log2_radius,statistic; separable: component,verdict,dim,mass_c");

  Flags radial_flags;
  auto* radial_cmd = app.add_subcommand("radial", "Radial criterion and Monge-Ampere mass of psi = phi(|z|^2)");
  radial_cmd->add_option("--weight", o.weight, "Profile phi(t)")->required();
  radial_cmd->add_option("--n", o.n, "Dimension for the Monge-Ampere mass (default 2)");
  radial_cmd->add_option("--radii", o.radii, "Comma-separated radii (default 2^1..2^64)");
  radial_cmd->footer("CSV columns: criterion,M,radius,log2_radius,statistic");

  Flags sep_flags;
  auto* sep_cmd = app.add_subcommand("separable", "Dimension of a separable weight psi_1(z1) + ... + psi_n(zn)");
  sep_cmd->add_option("--weight", o.weight, "Sum of one-variable terms");
  sep_cmd->add_option("--component", o.components, "One-variable component in z (repeatable)");
  sep_cmd->add_flag("--counterexample", o.counterexample, "Built-in |z1|^2 + psi_2(z2) example");
  quad_flags(sep_cmd, sep_flags);
  sep_cmd->footer("CSV columns: component,verdict,dim,mass_c");

  Flags sphere_flags;
  auto* sphere_cmd = app.add_subcommand("sphere", "Monte Carlo on the unit sphere for P = z1^k + ... + zn^k");
  sphere_cmd->add_option("--k", o.k, "Power k >= 2");
  sphere_cmd->add_option("--n", o.sphere_n, "Dimension n >= 2");
  sphere_cmd->add_option("--eps-sweep", o.eps_sweep, "Thresholds eps = 2^-FIRST .. 2^-LAST, e.g. 3:7");
  sphere_flags.samples = sphere_cmd->add_option("--samples", o.samples, "Sample count, e.g. 1e6");
  sphere_flags.seed = sphere_cmd->add_option("--seed", o.seed, "Seed");
  sphere_cmd->add_flag("--singular", o.singular, "Sphere average of |P|^(-2n/k) with level sums");
  sphere_cmd->add_option("--lelong", o.lelong, "Lelong number of log|P| at a point, e.g. \"1,-1\"");
  sphere_cmd->add_option("--radii", o.radii, "Lelong radii (default 1e-2, 1e-3, 1e-4 times |a|)");
  sphere_cmd->footer("CSV columns: eps,estimate,std_error; --singular alone: s,count,contribution; "
                     "--lelong alone: radius,sup_log");

  auto* ex_cmd = app.add_subcommand("examples", "Run the built-in worked examples");
  ex_cmd->add_option("--only", o.only, "Run only these example ids");
  ex_cmd->add_flag("--list", o.list, "List example ids");
  ex_cmd->footer("CSV columns: id,expected,computed,pass");

  flags = {dim_flags, member_flags, check_flags, radial_flags, sep_flags, sphere_flags};

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const RunConfig cfg = build_config(o, flags);
    const Format fmt = o.format == "csv" ? Format::Csv : o.format == "pretty" ? Format::Pretty : Format::Json;
    Outcome res;
    if (parse_cmd->parsed()) res = cmd_parse(o);
    else if (levi_cmd->parsed()) res = cmd_levi(o);
    else if (dim_cmd->parsed()) res = cmd_dim1d(o, cfg);
    else if (member_cmd->parsed()) res = cmd_member(o, cfg);
    else if (check_cmd->parsed()) res = cmd_check(o, cfg, check_flags);
    else if (radial_cmd->parsed()) res = cmd_radial(o, cfg, "radial");
    else if (sep_cmd->parsed()) res = cmd_separable(o, cfg, "separable");
    else if (sphere_cmd->parsed()) res = cmd_sphere(o, cfg);
    else res = cmd_examples(o);
    emit(out, fmt, res);
    return res.code;
  } catch (const SyntaxError& e) {
    err << "fockdim: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "fockdim: domain error: " << e.what() << '\n';
  } catch (const TypeError& e) {
    err << "fockdim: type error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "fockdim: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace fockdim::cli
