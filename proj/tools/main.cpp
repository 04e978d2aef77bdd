#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fixdet/bn.hpp"
#include "fixdet/enumerate.hpp"
#include "fixdet/residue.hpp"
#include "fixdet/tangent.hpp"
#include "fixdet/version.hpp"
#include "report.hpp"

namespace {

using fixdet::Error;
using fixdet::ErrorCode;
using fixdet::FieldSpec;
using fixdet::FiniteField;
using fixdet::RationalField;
using fixdet::require;
using fixdet::tools::Json;

struct Globals {
  std::string field = "Q";
  std::vector<std::uint64_t> q_list;
  std::uint64_t ceiling = fixdet::default_ceiling;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
  std::string format = "auto";
};

Globals g;

void emit(const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(g.out, std::ios::binary);
  require(static_cast<bool>(os), ErrorCode::invalid_input, "cannot open output file '" + g.out + "'");
  os << text;
  if (text.empty() || text.back() != '\n') os << '\n';
}

void emit(const Json& j) { emit(j.dump(2)); }

Json envelope(const std::string& command, Json config) {
  return {{"command", command}, {"version", fixdet::version}, {"seed", g.seed}, {"config", std::move(config)}};
}

Json read_json(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorCode::invalid_input, "cannot open '" + path + "'");
  try {
    return Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    fixdet::fail(ErrorCode::invalid_input, path + ": " + e.what());
  }
}

// "5", "1..10" or "2,3,5".
std::vector<long long> parse_range(const std::string& text) {
  std::vector<long long> out;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const long long a = std::stoll(text.substr(0, dots)), b = std::stoll(text.substr(dots + 2));
      require(a <= b, ErrorCode::invalid_input, "empty range '" + text + "'");
      require(b - a < 1'000'000, ErrorCode::ceiling_exceeded, "range '" + text + "' is too long");
      for (long long v = a; v <= b; ++v) out.push_back(v);
      return out;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoll(item));
  } catch (const std::logic_error&) {
    fixdet::fail(ErrorCode::invalid_input, "cannot parse range '" + text + "'");
  }
  require(!out.empty(), ErrorCode::invalid_input, "empty range '" + text + "'");
  return out;
}

// --- formula commands -----------------------------------------------------

struct Formula {
  std::string name, help;
  std::vector<std::string> params;
  std::function<Json(const std::map<std::string, long long>&)> eval;
};

Json as_json(const mpz_class& v) { return fixdet::tools::integer_to_json(v); }

std::vector<Formula> formulas() {
  using P = const std::map<std::string, long long>&;
  return {
      {"rho", "Brill-Noether number rho(r, d, k, g)", {"r", "d", "k", "g"},
       [](P p) { return as_json(fixdet::rho(p.at("r"), p.at("d"), p.at("k"), p.at("g"))); }},
      {"rho-omega", "expected dimension for canonical determinant", {"k", "g"},
       [](P p) { return as_json(fixdet::rho_omega(p.at("k"), p.at("g"))); }},
      {"rho1", "expected dimension with a fixed determinant, delta = h0(L^2 K^-1)", {"d", "k", "g", "delta"},
       [](P p) { return as_json(fixdet::rho1(p.at("d"), p.at("k"), p.at("g"), p.at("delta"))); }},
      {"rho2", "expected dimension for rank two with canonical-twisted determinant", {"d", "k", "g"},
       [](P p) { return as_json(fixdet::rho2(p.at("d"), p.at("k"), p.at("g"))); }},
      {"new-comps", "whether the bound predicts new components", {"k", "g", "delta", "m"},
       [](P p) { return Json(fixdet::new_comps(p.at("k"), p.at("g"), p.at("delta"), p.at("m"))); }},
      {"codim-single", "codimension bound for one alternating form", {"k", "r", "s", "t", "delta"},
       [](P p) { return as_json(fixdet::codim_bound_single(p.at("k"), p.at("r"), p.at("s"), p.at("t"), p.at("delta"))); }},
      {"codim-double", "codimension bound for two alternating forms", {"k", "r", "s", "t"},
       [](P p) { return as_json(fixdet::codim_bound_double(p.at("k"), p.at("r"), p.at("s"), p.at("t"))); }},
  };
}

std::string csv_cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void run_formula(const Formula& fm, const std::map<std::string, std::string>& raw) {
  std::vector<std::vector<long long>> ranges;
  bool grid = false;
  for (const auto& name : fm.params) {
    ranges.push_back(parse_range(raw.at(name)));
    grid = grid || ranges.back().size() > 1;
  }
  Json config = Json::object();
  for (const auto& name : fm.params) config[name] = raw.at(name);

  std::vector<std::pair<std::map<std::string, long long>, Json>> rows;
  std::vector<std::size_t> idx(ranges.size(), 0);
  for (;;) {
    std::map<std::string, long long> point;
    for (std::size_t i = 0; i < ranges.size(); ++i) point[fm.params[i]] = ranges[i][idx[i]];
    rows.emplace_back(point, fm.eval(point));
    std::size_t i = ranges.size();
    while (i > 0 && ++idx[i - 1] == ranges[i - 1].size()) idx[--i] = 0;
    if (i == 0) break;
  }

  const std::string format = g.format == "auto" ? (grid ? "csv" : "text") : g.format;
  if (format == "text" && !grid) {
    emit(csv_cell(rows.front().second));
  } else if (format == "csv" || format == "text") {
    std::string out;
    for (const auto& name : fm.params) out += name + ",";
    out += "value\n";
    for (const auto& [point, value] : rows) {
      for (const auto& name : fm.params) out += std::to_string(point.at(name)) + ",";
      out += csv_cell(value) + "\n";
    }
    emit(out);
  } else {
    require(format == "json", ErrorCode::invalid_input, "unknown format '" + format + "'");
    Json j = envelope(fm.name, config);
    Json values = Json::array();
    for (const auto& [point, value] : rows) {
      Json row = Json::object();
      for (const auto& name : fm.params) row[name] = point.at(name);
      row["value"] = value;
      values.push_back(std::move(row));
    }
    if (grid) j["values"] = values;
    else j["value"] = rows.front().second;
    emit(j);
  }
}

// --- enumeration ------------------------------------------------------------

std::vector<std::uint64_t> finite_q_list() {
  if (!g.q_list.empty()) return g.q_list;
  const auto spec = FieldSpec::parse(g.field);
  require(spec.is_finite(), ErrorCode::invalid_input, "this command needs --field q or --q-list");
  return {spec.order()};
}

fixdet::StrataEngine parse_engine(const std::string& s) {
  if (s == "auto") return fixdet::StrataEngine::automatic;
  if (s == "cells") return fixdet::StrataEngine::cells;
  require(s == "brute", ErrorCode::invalid_input, "engine must be auto, cells or brute");
  return fixdet::StrataEngine::brute;
}

Json fit_or_error(const std::map<std::uint64_t, mpz_class>& samples) {
  try {
    return fixdet::tools::fit_to_json(fixdet::fit_dimension(samples));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::fit_mismatch) throw;
    return {{"error", e.what()}};
  }
}

void run_strata(std::size_t r, std::size_t delta, std::size_t k, const std::string& form_path,
                const std::string& engine) {
  const fixdet::StrataOptions opts{g.ceiling, g.jobs, parse_engine(engine)};
  Json config = {{"k", k}, {"engine", engine}, {"ceiling", g.ceiling}};
  std::vector<fixdet::StratumReport> reps;
  if (!form_path.empty()) {
    const Json in = read_json(form_path);
    const auto spec = fixdet::tools::field_from_json(in.at("field"));
    require(spec.is_finite(), ErrorCode::invalid_input, "stratum counts need a finite field");
    const auto form = fixdet::tools::form_from_json(FiniteField::from_spec(spec), in);
    config["form"] = in;
    reps.push_back(fixdet::strata_counts(form, k, opts));
  } else {
    require(2 * delta <= r, ErrorCode::guard_violation, "rank 2 delta exceeds r");
    const auto qs = finite_q_list();
    Json ql = Json::array();
    for (auto q : qs) ql.push_back(q);
    config["r"] = r;
    config["delta"] = delta;
    config["q_list"] = ql;
    for (auto q : qs) {
      const auto f = FiniteField::of_order(q);
      reps.push_back(fixdet::strata_counts(fixdet::AlternatingForm<FiniteField>::standard(f, r, delta), k, opts));
    }
  }
  Json j = envelope("strata", config);
  Json list = Json::array();
  for (const auto& rep : reps) list.push_back(fixdet::tools::stratum_report_to_json(rep));
  j["reports"] = list;
  if (reps.size() >= 2) {
    std::map<std::uint64_t, mpz_class> totals;
    std::map<std::size_t, std::map<std::uint64_t, mpz_class>> strata;
    for (const auto& rep : reps) {
      totals[rep.q] = mpz_class(static_cast<unsigned long>(rep.total));
      for (std::size_t i = 0; i <= k; ++i) {
        const auto it = rep.strata.find(i);
        strata[i][rep.q] = mpz_class(static_cast<unsigned long>(it == rep.strata.end() ? 0 : it->second));
      }
    }
    j["total_fit"] = fit_or_error(totals);
    Json sf = Json::object();
    for (const auto& [i, s] : strata) sf[std::to_string(i)] = fit_or_error(s);
    j["strata_fits"] = sf;
  }
  emit(j);
}

void run_enumerate(std::size_t n, std::size_t k) {
  const auto qs = finite_q_list();
  require(qs.size() == 1, ErrorCode::invalid_input, "enumerate takes a single field");
  const auto f = FiniteField::of_order(qs.front());
  fixdet::SubspaceStream stream(n, k, f, g.ceiling);
  Json list = Json::array();
  stream.for_each([&](const fixdet::Subspace<FiniteField>& V) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < V.dim(); ++i) {
      Json row = Json::array();
      for (auto x : V.basis().row(i)) row.push_back(fixdet::tools::element_to_json(f, x));
      rows.push_back(std::move(row));
    }
    list.push_back(std::move(rows));
    return true;
  });
  Json j = envelope("enumerate", {{"n", n}, {"k", k}, {"q", qs.front()}, {"ceiling", g.ceiling}});
  j["count"] = list.size();
  j["subspaces"] = list;
  emit(j);
}

// --- pencil-check ------------------------------------------------------------

template <class F>
int pencil_check(const F& f, const Json& a, const Json& b) {
  const fixdet::FormPencil<F> p(fixdet::tools::matrix_from_json(f, a), fixdet::tools::matrix_from_json(f, b));
  const auto ker = fixdet::dependence_space(p);
  const auto cert = fixdet::pencil_rank_drop(p);
  Json j = envelope("pencil-check", {{"psi1", a}, {"psi2", b}});
  j["dependent"] = cert.dependent;
  j["dependence_dim"] = ker.size();
  if (cert.witness) {
    const F& K = *cert.witness_field;
    j["witness_lambda"] = {fixdet::tools::element_to_json(K, cert.witness->first),
                           fixdet::tools::element_to_json(K, cert.witness->second)};
    j["witness_field_degree"] = cert.witness_field_degree;
  } else {
    j["witness_lambda"] = nullptr;
    j["witness_field_degree"] = nullptr;
  }
  if (cert.gcd) j["gcd"] = fixdet::tools::polynomial_to_json(*cert.gcd);
  const bool agree = cert.dependent == !ker.empty();
  j["agree"] = agree;
  emit(j);
  if (!agree) {
    std::cerr << "invariant_violation: rank criterion and dependence space disagree\n";
    return 4;
  }
  return 0;
}

int run_pencil_check(const std::string& path1, const std::string& path2) {
  Json a, b;
  if (path2.empty()) {
    const Json in = read_json(path1);
    require(in.contains("psi1") && in.contains("psi2"), ErrorCode::invalid_input,
            "single-file input needs \"psi1\" and \"psi2\"");
    a = in["psi1"];
    b = in["psi2"];
  } else {
    a = read_json(path1);
    b = read_json(path2);
  }
  const auto spec = fixdet::tools::field_from_json(a.at("field"));
  require(spec == fixdet::tools::field_from_json(b.at("field")), ErrorCode::invalid_input,
          "the two pairings live over different fields");
  return fixdet::tools::with_field(spec, [&](const auto& f) { return pencil_check(f, a, b); });
}

// --- p1-form -------------------------------------------------------------------

template <class F>
void p1_form(const F& f, const Json& in) {
  using fixdet::tools::element_from_json;
  std::vector<typename F::Element> D, Delta;
  for (const auto& x : in.at("D")) D.push_back(element_from_json(f, x));
  for (const auto& x : in.value("Delta", Json::array())) Delta.push_back(element_from_json(f, x));
  const Json& phi = in.at("phi");
  const auto num = fixdet::tools::polynomial_from_json(f, phi.at("num"));
  const auto den = phi.contains("den") ? fixdet::tools::polynomial_from_json(f, phi["den"])
                                       : fixdet::Polynomial<F>::constant(f, f.one());
  const auto model = fixdet::build_residue_model(f, in.at("a").get<long long>(), in.at("b").get<long long>(), D,
                                                 Delta, fixdet::RationalFunction<F>(num, den));
  const auto check = fixdet::check_residue_model(model);
  Json j = envelope("p1-form", in);
  j["form"] = fixdet::tools::form_to_json(model.form);
  Json coords = Json::array();
  for (const auto& c : model.coords)
    coords.push_back({{"point", fixdet::tools::element_to_json(f, c.point)},
                      {"in_D", c.in_d},
                      {"summand", c.summand},
                      {"order", c.order}});
  j["coordinates"] = coords;
  Json dims = {{"E", check.dim_e}, {"M", check.dim_m}, {"radical_M", check.radical_m}, {"h0_E", check.h0_e}};
  if (check.dim_s) {
    dims["S"] = *check.dim_s;
    dims["S_meet_M"] = *check.dim_s_meet_m;
  } else {
    dims["S"] = nullptr;
    dims["S_meet_M"] = nullptr;
  }
  dims["expected_S"] = check.expected_dim_s;
  j["dimensions"] = dims;
  const char* iso = !check.s_isotropic ? "skipped" : *check.s_isotropic ? "pass" : "fail";
  j["verdicts"] = {{"alternating", check.alternating},
                   {"nondegenerate", check.nondegenerate},
                   {"vanishing", model.vanishing_holds()},
                   {"isotropy", iso},
                   {"ok", check.ok}};
  emit(j);
}

void run_p1_form(const std::string& path) {
  const Json in = read_json(path);
  const auto spec = fixdet::tools::field_from_json(in.at("field"));
  fixdet::tools::with_field(spec, [&](const auto& f) { p1_form(f, in); });
}

// --- campaign ------------------------------------------------------------------

int run_dimension_law(std::size_t r_max, std::size_t k_max) {
  fixdet::tools::DimensionLawConfig cfg;
  cfg.r_max = r_max;
  cfg.k_max = k_max;
  if (!g.q_list.empty()) cfg.q_list = g.q_list;
  cfg.ceiling = g.ceiling;
  cfg.seed = g.seed;
  cfg.jobs = g.jobs;
  const auto res = fixdet::tools::dimension_law_campaign(cfg);
  emit(res.report);
  if (!res.ok()) {
    std::cerr << "invariant_violation: " << res.fit_failures << " fit failures, " << res.window_failures
              << " window failures\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of isotropic Grassmannian and pencil-of-forms statements"};
  app.set_version_flag("--version", std::string(fixdet::version));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", g.field, "Q or a prime power q")->capture_default_str();
  app.add_option("--q-list", g.q_list, "finite field orders for counts and fits")->delimiter(',');
  app.add_option("--ceiling", g.ceiling, "enumeration work ceiling")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed, recorded in every report")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app.add_option("--out", g.out, "write the report here instead of stdout");
  app.add_option("--format", g.format, "json, csv or text (auto picks per command)")
      ->check(CLI::IsMember({"auto", "json", "csv", "text"}))
      ->capture_default_str();

  std::function<int()> action;

  const auto fms = formulas();
  std::map<std::string, std::map<std::string, std::string>> formula_args;
  for (const auto& fm : fms) {
    auto* sub = app.add_subcommand(fm.name, fm.help + "; each parameter takes a value, a..b or a,b,c");
    auto& args = formula_args[fm.name];
    for (const auto& p : fm.params) sub->add_option("--" + p, args[p], p)->required();
    sub->callback([&, fm] { action = [&, fm] { run_formula(fm, formula_args[fm.name]); return 0; }; });
  }

  std::size_t r = 0, delta = 0, k = 0;
  std::string form_path, engine = "auto";
  auto* strata = app.add_subcommand("strata", "isotropic k-subspaces bucketed by dim(V n radical), with fits");
  strata->add_option("--r", r, "dimension of the space");
  strata->add_option("--delta", delta, "half the rank of the standard form");
  strata->add_option("--k", k, "subspace dimension")->required();
  strata->add_option("--form", form_path, "form JSON instead of a standard form");
  strata->add_option("--engine", engine, "auto, cells or brute")->capture_default_str();
  strata->callback([&] { action = [&] { run_strata(r, delta, k, form_path, engine); return 0; }; });

  std::size_t n = 0, kk = 0;
  auto* en = app.add_subcommand("enumerate", "list every k-subspace of F_q^n as a reduced echelon basis");
  en->add_option("--n", n, "ambient dimension")->required();
  en->add_option("--k", kk, "subspace dimension")->required();
  en->callback([&] { action = [&] { run_enumerate(n, kk); return 0; }; });

  std::string psi1, psi2;
  auto* pc = app.add_subcommand("pencil-check", "dependence of the conditions imposed by two pairings");
  pc->add_option("psi1", psi1, "matrix JSON, or a file with \"psi1\" and \"psi2\"")->required();
  pc->add_option("psi2", psi2, "matrix JSON");
  pc->callback([&] { action = [&] { return run_pencil_check(psi1, psi2); }; });

  std::string model_path;
  auto* p1 = app.add_subcommand("p1-form", "residue pairing model on the projective line");
  p1->add_option("input", model_path, "model JSON")->required();
  p1->callback([&] { action = [&] { run_p1_form(model_path); return 0; }; });

  std::size_t r_max = 6, k_max = 4;
  auto* camp = app.add_subcommand("campaign", "verification campaigns");
  camp->require_subcommand(1);
  auto* dl = camp->add_subcommand("dimension-law", "fit stratum counts over the q-list and check degrees");
  dl->add_option("--r-max", r_max, "largest r")->capture_default_str();
  dl->add_option("--k-max", k_max, "largest k")->capture_default_str();
  dl->callback([&] { action = [&] { return run_dimension_law(r_max, k_max); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return fixdet::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
