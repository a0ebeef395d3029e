#include "posetdim/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "posetdim/divisibility.hpp"
#include "posetdim/error.hpp"
#include "posetdim/exact_dimension.hpp"
#include "posetdim/good_function.hpp"
#include "posetdim/multiset_realiser.hpp"
#include "posetdim/polynomials.hpp"
#include "posetdim/primes.hpp"
#include "posetdim/report.hpp"
#include "posetdim/rng.hpp"

namespace posetdim {

namespace {

using nlohmann::json;

/// Accumulates named checks; the criterion passes when all of them do.
class CheckLog {
 public:
  bool check(const std::string& name, bool ok, json info = json::object()) {
    info["check"] = name;
    info["ok"] = ok;
    checks_.push_back(std::move(info));
    pass_ = pass_ && ok;
    return ok;
  }
  bool pass() const { return pass_; }
  json to_json() const { return {{"checks", checks_}}; }

 private:
  json checks_ = json::array();
  bool pass_ = true;
};

bool corrupted(const AcceptanceConfig& c, const std::string& name) {
  return std::find(c.corrupt.begin(), c.corrupt.end(), name) != c.corrupt.end();
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string fingerprint(std::span<const LinearExtension> exts) {
  std::uint64_t h = fnv1a("");
  for (const auto& e : exts) {
    for (const auto i : e.order()) h = fnv1a(std::to_string(i) + ",", h);
    h = fnv1a(";", h);
  }
  return hex(h);
}

std::optional<int> dim_of(const Poset& p, const Caps& caps) {
  return exact_dimension(p, 8, caps).dimension;
}

json dim_json(const std::optional<int>& d) { return d ? json(*d) : json(nullptr); }

Poset random_small_poset(Rng& rng) {
  const std::size_t n = 1 + rng.below(5);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  std::vector<char> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) rel[i * n + j] = rng.below(3) == 0;
  return Poset::from_predicate(std::move(ids), [&](std::size_t a, std::size_t b) {
    return rel[a * n + b] != 0;
  });
}

// ----- criteria -----

json criterion_exact_dimension(const AcceptanceConfig& cfg, CheckLog& log) {
  const Caps& caps = cfg.caps;
  std::vector<std::pair<std::string, std::string>> covers = {
      {"1", "2"}, {"1", "3"}, {"1", "5"}, {"2", "4"}, {"2", "6"}, {"3", "6"}};
  if (corrupted(cfg, "d6-poset")) covers.emplace_back("6", "1");
  try {
    const Poset d6 =
        Poset::from_cover_relations({"1", "2", "3", "4", "5", "6"}, covers, caps);
    const auto d = dim_of(d6, caps);
    log.check("dim D6 = 2", d == 2, {{"dimension", dim_json(d)}});

    std::vector<std::vector<std::string>> orders = {{"1", "5", "3", "2", "6", "4"},
                                                    {"1", "2", "4", "3", "6", "5"}};
    if (corrupted(cfg, "d6-realiser")) orders.pop_back();
    std::vector<LinearExtension> exts;
    for (const auto& o : orders) {
      std::vector<std::size_t> idx;
      for (const auto& id : o) idx.push_back(*d6.index_of(id));
      exts.emplace_back(std::move(idx));
    }
    const auto v = is_realiser(d6, exts);
    json info = {{"extensions", orders}};
    if (v.witness) info["witness"] = {d6.id(v.witness->first), d6.id(v.witness->second)};
    log.check("D6 two-chain embedding is a realiser", v.ok, info);
  } catch (const CycleError& e) {
    log.check("D6 fixture is a poset", false, {{"witness", e.what()}});
  }

  for (int n = 1; n <= 4; ++n) {
    const auto d = dim_of(hypercube(n, caps), caps);
    log.check("dim Q^" + std::to_string(n) + " = " + std::to_string(n), d == n,
              {{"dimension", dim_json(d)}});
  }
  for (std::size_t k = 1; k <= 8; ++k) {
    const auto d = dim_of(chain(k, caps), caps);
    log.check("dim chain_" + std::to_string(k) + " = 1", d == 1, {{"dimension", dim_json(d)}});
  }
  for (std::size_t k = 2; k <= 8; ++k) {
    const auto d = dim_of(antichain(k, caps), caps);
    log.check("dim antichain_" + std::to_string(k) + " = 2", d == 2,
              {{"dimension", dim_json(d)}});
  }

  Rng rng(derive_seed(cfg.seed, 101));
  int agree = 0;
  json mismatch = nullptr;
  for (int trial = 0; trial < 100; ++trial) {
    const Poset p = random_small_poset(rng);
    const Poset q = random_small_poset(rng);
    const auto dp = dim_of(p, caps);
    const auto dq = dim_of(q, caps);
    const auto du = dim_of(disjoint_union(p, q, caps), caps);
    if (dp && dq && du && *du == std::max({*dp, *dq, 2})) {
      ++agree;
    } else if (mismatch.is_null()) {
      mismatch = {{"trial", trial}, {"dim_p", dim_json(dp)}, {"dim_q", dim_json(dq)},
                  {"dim_union", dim_json(du)}};
    }
  }
  json info = {{"pairs", 100}, {"agree", agree}};
  if (!mismatch.is_null()) info["witness"] = mismatch;
  log.check("dim(P + Q) = max(dim P, dim Q, 2)", agree == 100, info);
  return nullptr;
}

json criterion_layer_collapse(const AcceptanceConfig& cfg, CheckLog& log) {
  for (int n = 2; n <= 4; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        const std::vector<int> two{k, l};
        std::vector<int> all;
        for (int i = k; i <= l; ++i) all.push_back(i);
        const auto a = dim_of(hypercube_layers(n, two, cfg.caps), cfg.caps);
        const auto b = dim_of(hypercube_layers(n, all, cfg.caps), cfg.caps);
        log.check("n=" + std::to_string(n) + " layers {" + std::to_string(k) + "," +
                      std::to_string(l) + "}",
                  a && b && *a == *b, {{"two_layers", dim_json(a)}, {"all_layers", dim_json(b)}});
      }
    }
  }
  return nullptr;
}

json criterion_l1(const AcceptanceConfig& cfg, CheckLog& log) {
  json fam = json::array();
  for (const auto& [n, r] : {std::pair{6, 1}, std::pair{8, 1}, std::pair{10, 2}}) {
    const auto l1 = build_L1(n, r, cfg.seed, cfg.caps);
    auto sigmas = l1.sigmas;
    if (corrupted(cfg, "l1-coverage")) sigmas.resize(1);
    const auto witness = l1_coverage_witness(n, l1.y_size, sigmas, cfg.caps);
    json info = {{"n", n}, {"r", r}, {"size", l1.family.size()}, {"target", l1.target},
                 {"rounds", l1.rounds}, {"verified", l1.verified}};
    if (witness) info["witness"] = {{"x", witness->x}, {"Y", witness->y}};
    const std::string label = "(" + std::to_string(n) + "," + std::to_string(r) + ")";
    log.check("L1 " + label,
              static_cast<std::int64_t>(l1.family.size()) <= l1.target && l1.verified &&
                  l1.rounds <= 3 && !witness,
              info);
    fam.push_back(to_json(l1));
  }
  return fam;
}

json criterion_good_function(const AcceptanceConfig& cfg, CheckLog& log) {
  const int t = static_cast<int>(std::ceil(3 * std::log(8.0)));
  const GoodFunctionParams p{6, 6, 2, t, 8};
  const HighFloat cond = good_function_condition(p);
  log.check("condition < 1", cond < 1,
            {{"t", t}, {"condition", cond.convert_to<double>()}});
  const auto s = sample_good_function(p, cfg.seed, cfg.caps);
  log.check("verified within 5 retries", s.function.verified && s.attempts <= 5,
            {{"attempts", s.attempts}, {"verified", s.function.verified},
             {"independent_check", is_good(s.function, cfg.caps)}});
  json j = to_json(s);
  j["table"] = s.function.table();
  return j;
}

SizeInterval lin(cpp_rational lo, cpp_rational hi) {
  return {SizeValue::linear(std::move(lo)), SizeValue::linear(std::move(hi))};
}

json criterion_multiset(const AcceptanceConfig& cfg, CheckLog& log) {
  struct Instance {
    std::string label;
    WeightVector v;
    SizeInterval interval;
  };
  const std::vector<Instance> instances = {
      {"(6, ones, 1, 3)", WeightVector::ones(6), lin(1, 3)},
      {"(4, (1,1,2,3), 2, 4)", WeightVector::degrees({1, 1, 2, 3}), lin(2, 4)},
      {"(5, (1/2,1/2,1,1,3/2), 1, 2)",
       WeightVector::rationals(
           {cpp_rational(1, 2), cpp_rational(1, 2), 1, 1, cpp_rational(3, 2)}),
       lin(1, 2)},
  };
  json out = json::array();
  for (const auto& inst : instances) {
    const auto m = build_realiser_multiset(inst.v, inst.interval, cfg.seed, cfg.caps);
    const bool certified = m.certification && m.certification->ok;
    json info = {{"size", m.size()},
                 {"bound_limit", m.plan.bound_limit()},
                 {"theorem_bound", m.plan.theorem_bound.convert_to<double>()},
                 {"certified", certified}};
    if (m.certification && m.certification->witness) {
      const auto [x, y] = *m.certification->witness;
      info["witness"] = {m.poset->elements[x].str(), m.poset->elements[y].str()};
    }
    log.check(inst.label + " certified and within bound", certified && m.within_bound(), info);
    json j = to_json(m);
    j["realiser_fingerprint"] = fingerprint(m.realiser);
    out.push_back(j);
  }
  return out;
}

json criterion_decomposition(const AcceptanceConfig& cfg, CheckLog& log) {
  const std::vector<cpp_rational> kappas = {cpp_rational(3, 2), 3, 5, 10};
  json per_kappa = json::array();
  for (const auto& kappa : kappas) {
    std::uint64_t passed = 0;
    std::uint64_t components = 0;
    json first_failure = nullptr;
    for (std::uint64_t N = 1; N <= 2000; ++N) {
      auto d = decompose_interval({N, kappa}, cfg.caps);
      if (N == 2000 && corrupted(cfg, "interval-iso")) {
        for (auto& c : d.decomposition.components) {
          if (c.images.size() >= 2) {
            std::swap(c.images[0], c.images[1]);
            break;
          }
        }
      }
      const auto check = verify_decomposition(d, cfg.caps);
      components += d.decomposition.components.size();
      if (check.ok() && check.iso_checked == d.decomposition.components.size()) {
        ++passed;
      } else if (first_failure.is_null()) {
        first_failure = to_json(check, d);
        first_failure["N"] = N;
      }
    }
    json info = {{"kappa", to_string(kappa)}, {"instances", 2000}, {"passed", passed},
                 {"components_checked", components}};
    if (!first_failure.is_null()) info["witness"] = first_failure;
    log.check("kappa " + to_string(kappa), passed == 2000, info);
    per_kappa.push_back({{"kappa", to_string(kappa)}, {"components", components}});
  }
  return per_kappa;
}

json criterion_end_to_end(const AcceptanceConfig& cfg, CheckLog& log) {
  const auto r = build_interval_realiser({720, 6}, cfg.seed, cfg.caps);
  const bool certified = r.certification && r.certification->ok;
  const std::size_t prop_route = r.bound.pi + 1;
  std::int64_t limit = static_cast<std::int64_t>(prop_route);
  if (r.theorem_bound_merged) limit = std::min(limit, *r.theorem_bound_merged);
  json info = {{"elements", r.poset ? r.poset->size() : 0},
               {"size", r.size()},
               {"prop_route_value", prop_route},
               {"theorem_route_value", r.theorem_bound_merged
                                           ? json(*r.theorem_bound_merged)
                                           : json(nullptr)},
               {"certified", certified}};
  if (r.certification && r.certification->witness) {
    info["witness"] = {r.poset->id(r.certification->witness->first),
                       r.poset->id(r.certification->witness->second)};
  }
  log.check("N=720 kappa=6 certified", certified && r.poset && r.poset->size() == 601, info);
  log.check("size <= min(prop route, theorem route)",
            static_cast<std::int64_t>(r.size()) <= limit,
            {{"size", r.size()}, {"limit", limit}});

  const auto small = build_interval_realiser({30, 5}, cfg.seed, cfg.caps);
  Caps exact_caps = cfg.caps;
  exact_caps.exact_elements = std::max<std::size_t>(exact_caps.exact_elements, 25);
  exact_caps.exact_critical_pairs = std::max<std::size_t>(exact_caps.exact_critical_pairs, 400);
  const auto exact = exact_dimension(*small.poset, static_cast<int>(small.size()), exact_caps);
  const bool small_certified = small.certification && small.certification->ok;
  log.check("dim D_[6,30] <= certified realiser size",
            small_certified && exact.dimension &&
                static_cast<std::size_t>(*exact.dimension) <= small.size(),
            {{"dimension", dim_json(exact.dimension)},
             {"realiser_size", small.size()},
             {"certified", small_certified}});

  json j = to_json(r);
  j["realiser_fingerprint"] = fingerprint(r.merged.extensions);
  j["small"] = to_json(small);
  j["small"]["realiser_fingerprint"] = fingerprint(small.merged.extensions);
  j["small"]["exact_dimension"] = dim_json(exact.dimension);
  return j;
}

json criterion_appendix_a(const AcceptanceConfig& cfg, CheckLog& log) {
  for (const cpp_rational& kappa : {cpp_rational(3), cpp_rational(10), cpp_rational(100),
                                   cpp_rational(10000), cpp_rational(1000000)}) {
    const auto a = verify_appendix_a(kappa, cfg.caps);
    // Direct summation of log p over the first floor(r) primes.
    const auto primes = first_primes(a.floor_r);
    HighFloat sum = 0;
    for (const auto p : primes) sum += boost::multiprecision::log(HighFloat(p));
    const bool robin_direct = sum >= a.robin;
    log.check("kappa " + to_string(kappa), a.ok() && robin_direct,
              {{"floor_r", a.floor_r},
               {"prime", a.prime},
               {"theta", a.theta.convert_to<double>()},
               {"two_log_kappa", a.two_log_kappa.convert_to<double>()},
               {"robin", a.robin.convert_to<double>()},
               {"primorial_holds", a.holds},
               {"robin_holds", a.robin_holds},
               {"robin_direct_sum", robin_direct}});
  }
  return nullptr;
}

json criterion_polynomials(const AcceptanceConfig& cfg, CheckLog& log) {
  for (const std::uint32_t q : {2U, 3U, 4U, 5U}) {
    const FiniteField f(q);
    const auto irr = irreducibles_up_to_degree(f, 6, cfg.caps);
    bool per_degree = true;
    cpp_int qi = 1;
    for (int i = 1; i <= 6; ++i) {
      qi *= q;
      if (cpp_int(irr.counts[i - 1]) * i > qi) per_degree = false;
    }
    json counts = irr.counts;
    log.check("q=" + std::to_string(q) + " counts match necklace formula", irr.matches_oracle,
              {{"counts", counts}});
    log.check("q=" + std::to_string(q) + " n <= q^6 and n_i <= q^i/i",
              per_degree && cpp_int(irr.total()) <= qi, {{"n", irr.total()}});
  }
  for (const auto& [q, delta] : {std::pair{2U, 4}, std::pair{3U, 3}, std::pair{5U, 2}}) {
    const auto b = verify_appendix_b(q, delta, cfg.caps);
    log.check("appendix (q,delta)=(" + std::to_string(q) + "," + std::to_string(delta) + ")",
              b.ok(), to_json(b));
  }
  const FiniteField f2(2);
  const auto r = build_poly_realiser(f2, 3, 3, cfg.seed, cfg.caps);
  if (corrupted(cfg, "poly-iso")) {
    auto d = r.decomposition;
    for (auto& c : d.decomposition.components) {
      if (c.images.size() >= 2) {
        std::swap(c.images[0], c.images[1]);
        break;
      }
    }
    const auto check = verify_decomposition(f2, d, cfg.caps);
    log.check("(2,3,3) decomposition", check.ok(), to_json(check, d));
  } else {
    const auto check = verify_decomposition(f2, r.decomposition, cfg.caps);
    log.check("(2,3,3) decomposition", check.ok(), to_json(check, r.decomposition));
  }
  const bool certified = r.certification && r.certification->ok;
  const bool within = r.bound && HighFloat(r.size()) <= r.bound->minimum;
  log.check("(2,3,3) realiser certified and within bound", certified && within,
            {{"size", r.size()},
             {"bound", r.bound ? json(r.bound->minimum.convert_to<double>()) : json(nullptr)},
             {"certified", certified}});
  return nullptr;
}

json criterion_determinism(const AcceptanceConfig& cfg, CheckLog& log) {
  json digests = json::object();
  for (const int id : {3, 4, 5, 7}) {
    std::string dumps[2];
    for (auto& dump : dumps) {
      AcceptanceConfig clean = cfg;
      clean.corrupt.clear();
      CheckLog scratch;
      json out;
      switch (id) {
        case 3: out = criterion_l1(clean, scratch); break;
        case 4: out = criterion_good_function(clean, scratch); break;
        case 5: out = criterion_multiset(clean, scratch); break;
        default: out = criterion_end_to_end(clean, scratch); break;
      }
      dump = json{{"checks", scratch.to_json()}, {"output", out}}.dump();
    }
    const std::string a = hex(fnv1a(dumps[0]));
    const std::string b = hex(fnv1a(dumps[1]));
    log.check("criterion " + std::to_string(id) + " reproduces", dumps[0] == dumps[1],
              {{"first", a}, {"second", b}});
    digests[std::to_string(id)] = a;
  }
  return digests;
}

}  // namespace

AcceptanceConfig AcceptanceConfig::full() {
  AcceptanceConfig c;
  for (int i = 1; i <= 10; ++i) c.criteria.push_back(i);
  return c;
}

AcceptanceConfig AcceptanceConfig::from_json(const json& j, Caps caps) {
  if (!j.is_object()) throw InputError("acceptance config must be a JSON object");
  AcceptanceConfig c;
  c.caps = caps;
  try {
    if (j.contains("criteria")) {
      const auto& list = j.at("criteria");
      if (list.is_string() && list.get<std::string>() == "all") {
        c.criteria = full().criteria;
      } else {
        c.criteria = list.get<std::vector<int>>();
      }
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    if (j.contains("corrupt")) c.corrupt = j.at("corrupt").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("acceptance config: ") + e.what());
  }
  for (const int id : c.criteria) {
    if (id < 1 || id > 10) throw InputError("unknown criterion " + std::to_string(id));
  }
  for (const auto& name : c.corrupt) {
    if (std::find(kCorruptions.begin(), kCorruptions.end(), name) == kCorruptions.end()) {
      throw InputError("unknown corruption '" + name + "'");
    }
  }
  if (c.jobs < 1) throw InputError("jobs must be positive");
  return c;
}

std::string criterion_name(int id) {
  switch (id) {
    case 1: return "exact dimension oracle";
    case 2: return "layer collapse";
    case 3: return "L1 families";
    case 4: return "good functions";
    case 5: return "multiset realisers";
    case 6: return "interval decomposition";
    case 7: return "N=720 kappa=6 end to end";
    case 8: return "primorial and Robin checks";
    case 9: return "polynomial posets";
    case 10: return "determinism";
    default: throw PreconditionError("unknown criterion " + std::to_string(id));
  }
}

double criterion_time_limit(int id) {
  switch (id) {
    case 1: case 2: case 4: case 8: return 60;
    case 3: return 120;
    case 5: case 7: case 9: return 600;
    case 6: return 300;
    default: return 0;
  }
}

CriterionResult run_criterion(int id, const AcceptanceConfig& config) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  r.limit_seconds = criterion_time_limit(id);
  const Stopwatch watch;
  CheckLog log;
  json output;
  try {
    switch (id) {
      case 1: output = criterion_exact_dimension(config, log); break;
      case 2: output = criterion_layer_collapse(config, log); break;
      case 3: output = criterion_l1(config, log); break;
      case 4: output = criterion_good_function(config, log); break;
      case 5: output = criterion_multiset(config, log); break;
      case 6: output = criterion_decomposition(config, log); break;
      case 7: output = criterion_end_to_end(config, log); break;
      case 8: output = criterion_appendix_a(config, log); break;
      case 9: output = criterion_polynomials(config, log); break;
      default: output = criterion_determinism(config, log); break;
    }
    r.checks_pass = log.pass();
  } catch (const std::exception& e) {
    r.error = e.what();
    r.checks_pass = false;
  }
  r.seconds = watch.seconds();
  r.details = log.to_json();
  if (!output.is_null()) r.details["output"] = std::move(output);
  if (!r.error.empty()) r.details["error"] = r.error;
  return r;
}

AcceptanceSummary run_acceptance_suite(const AcceptanceConfig& config) {
  AcceptanceSummary summary;
  summary.results.resize(config.criteria.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < config.criteria.size(); i = next++) {
      summary.results[i] = run_criterion(config.criteria[i], config);
    }
  };
  const int threads =
      std::min<int>(config.jobs, static_cast<int>(config.criteria.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return summary;
}

bool AcceptanceSummary::all_pass() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.pass(); });
}

json AcceptanceSummary::result_json() const {
  json list = json::array();
  for (const auto& r : results) {
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"checks_pass", r.checks_pass},
                    {"time_limit_seconds", r.limit_seconds},
                    {"details", r.details}});
  }
  return {{"criteria", list}, {"all_checks_pass", std::all_of(results.begin(), results.end(),
                                                              [](const CriterionResult& r) {
                                                                return r.checks_pass;
                                                              })}};
}

json AcceptanceSummary::timing_json() const {
  json per = json::object();
  bool within = true;
  double total = 0;
  for (const auto& r : results) {
    per[std::to_string(r.id)] = {{"seconds", r.seconds}, {"within_limit", r.within_time()},
                                 {"pass", r.pass()}};
    within = within && r.within_time();
    total += r.seconds;
  }
  return {{"criteria", per}, {"criteria_seconds", total}, {"all_within_limits", within}};
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << r.id << " [" << r.name << "]: " << (r.pass() ? "PASS" : "FAIL") << " ("
     << std::fixed << std::setprecision(2) << r.seconds << " s";
  if (r.limit_seconds > 0) os << ", limit " << std::setprecision(0) << r.limit_seconds << " s";
  os << ")";
  if (!r.checks_pass) os << " checks failed";
  if (!r.within_time()) os << " time limit exceeded";
  if (!r.error.empty()) os << ": " << r.error;
  return os.str();
}

}  // namespace posetdim
