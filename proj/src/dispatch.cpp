#include "jetdiff/dispatch.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <functional>
#include <set>
#include <thread>

#include "jetdiff/cache.hpp"
#include "jetdiff/invariant_jets.hpp"
#include "jetdiff/riemann_roch.hpp"
#include "jetdiff/schur_filtration.hpp"
#include "jetdiff/thresholds.hpp"
#include "jetdiff/universal_vf.hpp"
#include "jetdiff/verify.hpp"
#include "jetdiff/version.hpp"

namespace jetdiff {

namespace {

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  std::optional<std::string> str(const std::string& name) const {
    auto it = raw_.find(name);
    if (it == raw_.end()) return std::nullopt;
    return it->second;
  }
  std::string need_str(const std::string& name) const {
    if (auto v = str(name)) return *v;
    raise(ErrorKind::MissingParam, "missing required parameter '" + name + "'");
  }
  std::optional<unsigned> uint(const std::string& name) const {
    const auto v = str(name);
    if (!v) return std::nullopt;
    unsigned out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size())
      raise(ErrorKind::InvalidArgument, "parameter '" + name + "' must be a non-negative integer");
    return out;
  }
  unsigned need_uint(const std::string& name) const {
    if (auto v = uint(name)) return *v;
    raise(ErrorKind::MissingParam, "missing required parameter '" + name + "'");
  }

 private:
  const std::map<std::string, std::string>& raw_;
};

Json rational_value(const Rational& r) {
  return {{"value", r.to_string()}, {"approx", r.to_double()}};
}

Json poly_value(const SparsePoly& p) { return {{"expression", p.to_string()}, {"terms", to_json(p)}}; }

/// A polynomial over sd_table(), evaluated at d when a degree was supplied.
Json sd_value(const SparsePoly& p, const std::optional<unsigned>& degree) {
  if (!degree) return poly_value(p);
  return rational_value(evaluate(p, std::vector<Rational>{Rational(0), Rational(*degree)}));
}

Json certificate_json(const ThresholdCertificate& c) {
  return {{"d_min", c.d_min}, {"value_before", c.before.to_string()}, {"value_at", c.at.to_string()}};
}

EngineOptions engine_options(const RunConfig& cfg) {
  EngineOptions o;
  if (!cfg.periods.empty()) o.plan.periods = cfg.periods;
  if (!cfg.starts.empty()) o.plan.starts = cfg.starts;
  o.workers = cfg.workers;
  return o;
}

std::string monomial_label(const std::vector<unsigned>& e) {
  std::string s = "integral_";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    s += "c" + std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

Json run_chern(const Params& p) {
  const unsigned ambient = p.need_uint("ambient");
  const auto degree = p.uint("degree");
  const ChernData data = hypersurface_chern(ambient);
  Json out{{"ambient", ambient}, {"dim", data.dim()}};
  Json classes = Json::array();
  for (std::size_t i = 1; i < data.c.size(); ++i) classes.push_back(sd_value(data.c[i], degree));
  out["chern_classes"] = std::move(classes);
  // Monomials c1^e1 c2^e2 ... of weighted degree dim.
  std::vector<std::vector<unsigned>> monomials;
  std::vector<unsigned> e(data.dim(), 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i == 0) {
      if (left == 0) monomials.push_back(e);
      return;
    }
    for (unsigned k = 0; k * i <= left; ++k) {
      e[i - 1] = k;
      rec(i - 1, left - k * i);
    }
    e[i - 1] = 0;
  };
  rec(data.dim(), data.dim());
  for (const auto& mono : monomials) {
    const SparsePoly v = data.integral(mono);
    out[monomial_label(mono)] = degree ? Json(evaluate(v, std::vector<Rational>{0, *degree}).to_string())
                                       : Json(v.to_string());
  }
  return out;
}

Json run_filtration(const Params& p) {
  const Family family = parse_family(p.need_str("family"));
  const unsigned m = p.need_uint("m");
  const unsigned k = p.uint("k").value_or(3);
  const unsigned r = p.uint("rank").value_or(family == Family::K3Dim3 ? 3 : 2);
  Json indices = Json::array();
  Integer total = 0;
  for (const auto& idx : filtration_indices(family, m, k)) {
    Integer dim = 1;
    if (family == Family::GG) {
      for (auto l : idx.lambda.parts) dim *= binomial(l + r - 1, r - 1);
    } else {
      dim = schur_dim(idx.lambda, family == Family::K3Dim3 ? 3 : 2);
    }
    total += dim;
    indices.push_back({{"gamma", idx.gamma}, {"lambda", idx.lambda.parts}, {"dimension", dim.get_str()}});
  }
  return {{"family", std::string(family_name(family))},
          {"m", m},
          {"count", indices.size()},
          {"total_dimension", total.get_str()},
          {"indices", std::move(indices)}};
}

ChiFamily chi_family_for(unsigned dim) { return dim == 3 ? ChiFamily::Schur3 : ChiFamily::Sym2; }

Json run_chi(const Params& p, const RunConfig& cfg) {
  const unsigned k = p.need_uint("k"), dim = p.need_uint("dim"), m = p.need_uint("m");
  const auto degree = p.uint("degree");
  CacheStatus status;
  chi_closed_form(chi_family_for(dim), &status);
  Json out{{"k", k}, {"dim", dim}, {"m", m}, {"closed_form", cache_status_name(status)}};
  if (degree) {
    out["chi"] = rational_value(chi_E(k, dim, m, Integer(*degree), cfg.workers));
    out["degree"] = *degree;
  } else {
    out["chi"] = poly_value(chi_E_poly(k, dim, m, cfg.workers));
  }
  return out;
}

Json run_chi_leading(const Params& p, const RunConfig& cfg) {
  const unsigned k = p.need_uint("k"), dim = p.need_uint("dim");
  const auto degree = p.uint("degree");
  if (dim != 2 && dim != 3) raise(ErrorKind::UnsupportedCase, "dim must be 2 or 3");
  const unsigned growth = tower_dims(dim, dim, k).first;
  const EngineOptions o = engine_options(cfg);
  CacheStatus status;
  chi_closed_form(chi_family_for(dim), &status);
  const auto lc = leading_coeff([&](unsigned m) { return chi_E_poly(k, dim, m, cfg.workers); }, growth, o.plan);
  Json out{{"k", k},
           {"dim", dim},
           {"growth_degree", growth},
           {"period", lc.period},
           {"start", lc.start},
           {"validation_points", lc.evidence.size()},
           {"closed_form", cache_status_name(status)},
           {"leading_coefficient", sd_value(lc.value, degree)}};
  if (degree) out["degree"] = *degree;
  return out;
}

Json run_h2(const Params& p, const RunConfig& cfg) {
  const unsigned m = p.need_uint("m"), degree = p.need_uint("degree");
  const Rational sum = h2_sum(m, cfg.workers);
  return {{"m", m},
          {"degree", degree},
          {"h2_sum", rational_value(sum)},
          {"bound", rational_value(Rational(degree) * Rational(degree + 13) * sum)}};
}

Json run_threshold(const Params& p, const RunConfig& cfg) {
  const Criterion c = parse_criterion(p.need_str("criterion"));
  const auto assignments = parse_assignments(p.str("params").value_or(""));
  const ThresholdReport rep = threshold(c, assignments, engine_options(cfg));
  Json routes = Json::array();
  std::optional<long> d_min;
  for (const auto& r : rep.routes) {
    Json j{{"route", r.route}, {"expression", r.expression.to_string()}};
    if (r.certificate) {
      j["certificate"] = certificate_json(*r.certificate);
      if (!d_min) d_min = r.certificate->d_min;
    } else {
      j["error"] = r.error;
    }
    routes.push_back(std::move(j));
  }
  Json out{{"criterion", criterion_name(c)}, {"routes_agree", rep.routes_agree}, {"routes", std::move(routes)}};
  out["d_min"] = d_min ? Json(*d_min) : Json(nullptr);
  if (!rep.notes.empty()) out["notes"] = rep.notes;
  if (!d_min) raise(ErrorKind::NoThresholdFound, "no route produced a threshold");
  return out;
}

Json run_feasibility(const Params& p) {
  const std::string region = p.need_str("region");
  const FeasibilityReport rep = feasibility(region, parse_assignments(p.str("params").value_or("")));
  Json parts = Json::array();
  for (const auto& part : rep.parts)
    parts.push_back({{"inequality", part.label},
                     {"lhs", part.lhs.to_string()},
                     {"rhs", part.rhs.to_string()},
                     {"holds", part.holds}});
  return {{"region", rep.region}, {"feasible", rep.feasible}, {"inequalities", std::move(parts)}};
}

/// Runs fn(i) for i < n over contiguous chunks; results land at their index.
template <typename T>
std::vector<T> parallel_map(std::size_t n, unsigned workers, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  std::vector<std::exception_ptr> errors(chunks);
  auto run = [&](std::size_t c) {
    try {
      for (std::size_t i = n * c / chunks; i < n * (c + 1) / chunks; ++i) out[i] = fn(i);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (chunks == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(run, c);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Json multi_json(const Multi& m) { return Json(m); }

Json run_tangency(const Params& p, const RunConfig& cfg) {
  const unsigned d = p.need_uint("degree"), k = p.need_uint("order");
  if (k > 2) raise(ErrorKind::UnsupportedOrder, "tangency checks need order at most 2");
  const std::string which = p.str("family").value_or("all");
  std::vector<FieldFamily> families;
  if (which == "all") families = {FieldFamily::V300, FieldFamily::V210, FieldFamily::V111};
  else families = {parse_field_family(which)};
  const UniversalCoords coords(3, d, k);
  const JetEquations eqs = build_equations(coords);
  Json out{{"degree", d}, {"order", k}, {"n_d", coords.n_d()}};
  Json per = Json::array();
  bool all = true;
  for (auto f : families) {
    const auto members = family_members(coords, f);
    struct Outcome {
      bool tangent = false;
      unsigned pole = 0;
    };
    const auto outcomes = parallel_map<Outcome>(members.size(), cfg.workers, [&](std::size_t i) {
      const MeroField field = explicit_family(coords, f, members[i].first, members[i].second);
      return Outcome{check_tangency(field, eqs), field.pole_order(coords)};
    });
    std::set<unsigned> poles;
    Json failures = Json::array();
    std::size_t passed = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      poles.insert(outcomes[i].pole);
      if (outcomes[i].tangent) ++passed;
      else failures.push_back({{"alpha", multi_json(members[i].first)}, {"mu", multi_json(members[i].second)}});
    }
    all = all && passed == members.size();
    per.push_back({{"family", field_family_name(f)},
                   {"members", members.size()},
                   {"tangent", passed},
                   {"pole_orders", std::vector<unsigned>(poles.begin(), poles.end())},
                   {"failures", std::move(failures)}});
  }
  out["families"] = std::move(per);
  out["all_tangent"] = all;
  return out;
}

Json run_span(const Params& p) {
  const unsigned d = p.need_uint("degree"), k = p.need_uint("order");
  const std::uint64_t seed = p.uint("seed").value_or(42);
  if (k > 2) raise(ErrorKind::UnsupportedOrder, "spanning checks need order at most 2");
  const UniversalCoords coords(3, d, k);
  const JetEquations eqs = build_equations(coords);
  const auto point = random_point(coords, eqs, seed);
  const auto fields = spanning_collection(coords, eqs);
  const std::size_t rank = spanning_rank(fields, point, coords, eqs);
  const std::size_t tangent = tangent_dimension(coords, eqs, point);
  unsigned max_pole = 0;
  for (const auto& f : fields) max_pole = std::max(max_pole, f.pole_order(coords));
  Json pt = Json::object();
  for (std::size_t v = 0; v < point.size(); ++v) pt[coords.table()->name(v)] = point[v].to_string();
  return {{"degree", d},
          {"order", k},
          {"seed", seed},
          {"n_d", coords.n_d()},
          {"fields", fields.size()},
          {"rank", rank},
          {"tangent_dimension", tangent},
          {"full_rank", rank == tangent},
          {"max_pole_order", max_pole},
          {"point", std::move(pt)}};
}

Json run_verify(const Params& p) {
  const SuiteResult r = run_suite(p.need_str("suite"));
  return {{"suite", r.suite}, {"cases", r.cases.size()}, {"failures", r.failures()}};
}

Json run_cache(const Params& p, const RunConfig& cfg) {
  const std::string action = p.need_str("action");
  const ChiCache cache(cfg.cache_path.value_or(default_cache_path()));
  if (action == "inspect") return cache.inspect();
  if (action == "clear") return {{"path", cache.path().string()}, {"removed", cache.clear()}};
  raise(ErrorKind::InvalidArgument, "cache action must be inspect or clear");
}

}  // namespace

std::vector<std::string> command_names() {
  return {"chern", "filtration", "chi", "chi-leading", "h2-bound", "threshold",
          "feasibility", "tangency", "span", "verify", "cache"};
}

std::map<std::string, Rational> parse_assignments(const std::string& text) {
  std::map<std::string, Rational> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    std::erase_if(item, [](unsigned char ch) { return std::isspace(ch); });
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) raise(ErrorKind::ParseError, "expected name=value, got '" + item + "'");
    out[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
    pos = end + 1;
  }
  return out;
}

Json ResultRecord::to_json() const {
  return {{"command", command},
          {"inputs", inputs},
          {"result", result},
          {"engine_version", engine_version},
          {"elapsed_ms", elapsed_ms}};
}

ResultRecord dispatch(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.workers == 0) raise(ErrorKind::InvalidArgument, "worker count must be at least 1");
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), config.command) == names.end())
    raise(ErrorKind::UnknownCommand, "unknown command '" + config.command + "'");
  set_chi_cache_path(config.use_cache ? std::optional(config.cache_path.value_or(default_cache_path()))
                                      : std::nullopt);

  const Params p(config.params);
  const std::string& c = config.command;
  Json result;
  if (c == "chern") result = run_chern(p);
  else if (c == "filtration") result = run_filtration(p);
  else if (c == "chi") result = run_chi(p, config);
  else if (c == "chi-leading") result = run_chi_leading(p, config);
  else if (c == "h2-bound") result = run_h2(p, config);
  else if (c == "threshold") result = run_threshold(p, config);
  else if (c == "feasibility") result = run_feasibility(p);
  else if (c == "tangency") result = run_tangency(p, config);
  else if (c == "span") result = run_span(p);
  else if (c == "verify") result = run_verify(p);
  else result = run_cache(p, config);

  ResultRecord rec;
  rec.command = c;
  rec.inputs = Json(config.params);
  rec.inputs["workers"] = config.workers;
  if (!config.periods.empty()) rec.inputs["periods"] = config.periods;
  if (!config.starts.empty()) rec.inputs["starts"] = config.starts;
  rec.result = std::move(result);
  rec.engine_version = std::string(kEngineVersion);
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoFailure:
      return 4;
    case ErrorKind::NotDivisible:
    case ErrorKind::NonNilpotentArgument:
    case ErrorKind::NotSymmetric:
    case ErrorKind::NotHomogeneous:
    case ErrorKind::InternalInconsistency:
    case ErrorKind::PeriodUndetermined:
    case ErrorKind::NoThresholdFound:
    case ErrorKind::NoSolution:
    case ErrorKind::SingularSystem:
      return 3;
    default:
      return 2;
  }
}

Json error_record(const std::string& command, ErrorKind kind, const std::string& message) {
  return {{"command", command},
          {"error", {{"kind", std::string(error_kind_name(kind))}, {"message", message}}},
          {"engine_version", std::string(kEngineVersion)}};
}

}  // namespace jetdiff
