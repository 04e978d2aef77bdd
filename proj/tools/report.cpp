#include "report.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <thread>

#include "fixdet/version.hpp"

namespace fixdet::tools {

Json field_to_json(const FieldSpec& spec) {
  if (!spec.is_finite()) return {{"kind", "Q"}};
  return {{"kind", "Fp"}, {"p", spec.p}, {"e", spec.e}};
}

FieldSpec field_from_json(const Json& j) {
  if (j.is_string()) return FieldSpec::parse(j.get<std::string>());
  if (j.is_number_integer()) return FieldSpec::parse(std::to_string(j.get<long long>()));
  require(j.is_object() && j.contains("kind"), ErrorCode::invalid_input, "field must be an object with a \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "Q") return FieldSpec::rationals();
  require(kind == "Fp", ErrorCode::invalid_input, "unknown field kind '" + kind + "'");
  require(j.contains("p") && j["p"].is_number_unsigned(), ErrorCode::invalid_input, "finite field needs a prime \"p\"");
  const auto p = j["p"].get<std::uint32_t>();
  const auto e = j.value("e", 1u);
  require(is_prime(p), ErrorCode::invalid_input, "characteristic " + std::to_string(p) + " is not prime");
  require(e >= 1, ErrorCode::invalid_input, "extension degree must be positive");
  return FieldSpec::finite(p, e);
}

Json integer_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

mpq_class element_from_json(const RationalField& f, const Json& j) {
  if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
  require(j.is_string(), ErrorCode::invalid_input, "rational scalar must be an integer or an \"a/b\" string");
  return f.parse(j.get<std::string>());
}

std::uint32_t element_from_json(const FiniteField& f, const Json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      return f.from_int(std::stoll(s));
    } catch (const std::logic_error&) {
      fail(ErrorCode::invalid_input, "cannot parse finite field scalar '" + s + "'");
    }
  }
  require(j.is_array() && j.size() <= f.degree(), ErrorCode::invalid_input,
          "extension scalar must be a list of at most " + std::to_string(f.degree()) + " coefficients");
  std::vector<std::uint32_t> digits(f.degree(), 0);
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number_integer(), ErrorCode::invalid_input, "coefficients must be integers");
    const long long p = f.characteristic();
    digits[i] = static_cast<std::uint32_t>(((j[i].get<long long>() % p) + p) % p);
  }
  return f.from_digits(digits);
}

namespace detail {

void check_matrix_shape(const Json& j, std::size_t& rows, std::size_t& cols) {
  require(j.is_object() && j.contains("entries") && j["entries"].is_array(), ErrorCode::invalid_input,
          "matrix JSON needs an \"entries\" array");
  const auto& e = j["entries"];
  rows = j.value("rows", e.size());
  cols = j.value("cols", e.empty() ? std::size_t{0} : e[0].size());
  require(e.size() == rows, ErrorCode::invalid_input,
          "matrix has " + std::to_string(e.size()) + " rows, header says " + std::to_string(rows));
  for (std::size_t i = 0; i < rows; ++i)
    require(e[i].is_array() && e[i].size() == cols, ErrorCode::invalid_input,
            "row " + std::to_string(i + 1) + " does not have " + std::to_string(cols) + " entries");
}

}  // namespace detail

Json fit_to_json(const DimensionFit& fit) {
  Json c = Json::array();
  for (const auto& x : fit.coefficients) c.push_back(integer_to_json(x));
  return {{"coefficients", c}, {"degree", fit.degree}, {"method", fit.method}, {"polynomial", fit.to_string()}};
}

Json stratum_report_to_json(const StratumReport& rep) {
  Json strata = Json::object();
  for (const auto& [i, c] : rep.strata) strata[std::to_string(i)] = c;
  return {{"params", {{"r", rep.r}, {"p", rep.p}, {"delta", rep.delta}, {"k", rep.k}, {"q", rep.q}}},
          {"strata", strata},
          {"total", rep.total}};
}

namespace {

struct Case {
  std::size_t r, delta, k;
};

struct Task {
  std::size_t case_index;
  std::uint64_t q;
};

StratumReport count_case(const Case& c, std::uint64_t q, const DimensionLawConfig& cfg) {
  const FiniteField f = FiniteField::of_order(q);
  std::seed_seq seq{cfg.seed, std::uint64_t{c.r}, std::uint64_t{c.delta}, std::uint64_t{c.k}, q};
  std::mt19937_64 rng(seq);
  const auto form = AlternatingForm<FiniteField>::standard(f, c.r, c.delta).congruent(random_invertible(f, c.r, rng));
  return strata_counts(form, c.k, StrataOptions{cfg.ceiling, 1, StrataEngine::automatic});
}

// Fit that records FIT_MISMATCH instead of throwing.
Json try_fit(const std::map<std::uint64_t, mpz_class>& samples, long long expected, bool& ok) {
  Json j;
  try {
    const auto fit = fit_dimension(samples);
    j = fit_to_json(fit);
    ok = fit.degree == expected;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::fit_mismatch) throw;
    j = {{"error", e.what()}};
    ok = false;
  }
  j["expected_degree"] = expected;
  j["ok"] = ok;
  return j;
}

}  // namespace

DimensionLawResult dimension_law_campaign(const DimensionLawConfig& cfg) {
  require(!cfg.q_list.empty(), ErrorCode::invalid_input, "q-list is empty");
  for (auto q : cfg.q_list)
    require(prime_power_decomposition(q).first != 0, ErrorCode::invalid_input,
            std::to_string(q) + " is not a prime power");
  std::vector<std::uint64_t> qs = cfg.q_list;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

  std::vector<Case> cases;
  for (std::size_t r = 1; r <= cfg.r_max; ++r)
    for (std::size_t delta = 0; 2 * delta <= r; ++delta)
      for (std::size_t k = 1; k <= std::min(cfg.k_max, r); ++k) cases.push_back({r, delta, k});

  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cases.size(); ++c)
    for (auto q : qs) tasks.push_back({c, q});

  // Workers take tasks in index order; results land in fixed slots.
  std::vector<StratumReport> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      try {
        results[t] = count_case(cases[tasks[t].case_index], tasks[t].q, cfg);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, cfg.jobs);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  DimensionLawResult out;
  Json case_list = Json::array();
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto [r, delta, k] = cases[c];
    const std::size_t p = r - 2 * delta;
    const bool nonempty = k + delta <= r;
    const std::size_t lo = k > delta ? k - delta : 0, hi = std::min(k, p);

    std::map<std::uint64_t, mpz_class> totals;
    std::map<std::size_t, std::map<std::uint64_t, mpz_class>> strata;
    Json samples = Json::object();
    bool window_ok = true;
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      const auto& rep = results[c * qs.size() + qi];
      totals[rep.q] = mpz_class(static_cast<unsigned long>(rep.total));
      for (std::size_t i = 0; i <= k; ++i) {
        const auto it = rep.strata.find(i);
        const std::uint64_t cnt = it == rep.strata.end() ? 0 : it->second;
        strata[i][rep.q] = mpz_class(static_cast<unsigned long>(cnt));
        const bool expect = nonempty && lo <= i && i <= hi;
        if ((cnt > 0) != expect) window_ok = false;
      }
      if ((rep.total > 0) != nonempty) window_ok = false;
      Json s = stratum_report_to_json(rep);
      samples[std::to_string(rep.q)] = {{"strata", s["strata"]}, {"total", s["total"]}};
    }

    Json entry = {{"r", r}, {"p", p}, {"delta", delta}, {"k", k}, {"samples", samples}};
    bool fits_ok = true;
    if (nonempty) {
      bool ok = false;
      entry["total_fit"] = try_fit(totals, expected_total_degree(static_cast<long long>(r), static_cast<long long>(k),
                                                                 static_cast<long long>(delta)),
                                   ok);
      fits_ok = fits_ok && ok;
      Json sf = Json::object();
      for (std::size_t i = lo; i <= hi; ++i) {
        bool sok = false;
        sf[std::to_string(i)] =
            try_fit(strata[i], expected_stratum_degree(static_cast<long long>(r), static_cast<long long>(p),
                                                       static_cast<long long>(k), static_cast<long long>(i)),
                    sok);
        fits_ok = fits_ok && sok;
      }
      entry["strata_fits"] = sf;
    }
    entry["window"] = {{"nonempty", nonempty}, {"lo", lo}, {"hi", hi}, {"ok", window_ok}};
    entry["ok"] = fits_ok && window_ok;
    out.fit_failures += !fits_ok;
    out.window_failures += !window_ok;
    case_list.push_back(std::move(entry));
  }
  out.cases = cases.size();

  Json qlist = Json::array();
  for (auto q : qs) qlist.push_back(q);
  out.report = {{"command", "campaign dimension-law"},
                {"version", version},
                {"seed", cfg.seed},
                {"config", {{"r_max", cfg.r_max}, {"k_max", cfg.k_max}, {"q_list", qlist}, {"ceiling", cfg.ceiling}}},
                {"cases", case_list},
                {"summary",
                 {{"cases", out.cases},
                  {"fit_failures", out.fit_failures},
                  {"window_failures", out.window_failures},
                  {"ok", out.ok()}}}};
  return out;
}

}  // namespace fixdet::tools
