#include "posetdim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "posetdim/acceptance.hpp"
#include "posetdim/caps.hpp"
#include "posetdim/divisibility.hpp"
#include "posetdim/error.hpp"
#include "posetdim/exact_dimension.hpp"
#include "posetdim/good_function.hpp"
#include "posetdim/multiset_realiser.hpp"
#include "posetdim/polynomials.hpp"
#include "posetdim/poset_json.hpp"
#include "posetdim/report.hpp"

namespace posetdim {

namespace {

using nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string caps_path;
  std::string csv;
  int jobs = 1;
  Caps caps;
};

/// What a command hands back to the report writer.
struct Outcome {
  json params = json::object();
  json result;
  int code = kExitOk;
  json timing = json::object();  // merged into the report's timing field
};

using Handler = std::function<Outcome(const Globals&)>;

std::optional<SizeValue> parse_size(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text.rfind("log(", 0) == 0 && text.back() == ')') {
    return SizeValue::log_of(parse_rational(text.substr(4, text.size() - 5)));
  }
  return SizeValue::linear(parse_rational(text));
}

SizeInterval parse_interval(const std::string& k, const std::string& l, const WeightVector& v) {
  auto lo = parse_size(k);
  auto hi = parse_size(l);
  if (!lo || !hi) throw PreconditionError("both --k and --l are required");
  // Bare numbers next to log-prime weights are read as log arguments.
  if (v.kind() == WeightKind::kLogPrimes) {
    if (lo->kind() == WeightKind::kLinear) lo = SizeValue::log_of(lo->repr());
    if (hi->kind() == WeightKind::kLinear) hi = SizeValue::log_of(hi->repr());
  } else if (lo->kind() != WeightKind::kLinear || hi->kind() != WeightKind::kLinear) {
    throw PreconditionError("log(...) bounds need log-prime weights");
  }
  if (*hi < *lo) throw PreconditionError("need k <= l");
  return {*lo, *hi};
}

json pair_ids(const Poset& p, const ElementPair& e) { return {p.id(e.first), p.id(e.second)}; }

void maybe_csv(const Globals& g, const BoundRow& row) {
  if (!g.csv.empty()) append_csv(g.csv, {row});
}

// ----- poset -----

void add_poset_commands(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* poset = app.add_subcommand("poset", "Finite posets, realisers, builders");
  poset->require_subcommand(1);

  {
    auto* c = poset->add_subcommand("critical-pairs", "List the critical pairs");
    auto input = std::make_shared<std::string>();
    c->add_option("--input", *input, "Poset JSON file")->required();
    handlers[c] = [input](const Globals& g) {
      const Poset p = poset_from_json(read_json_file(*input), g.caps);
      const auto pairs = critical_pairs(p);
      json list = json::array();
      for (const auto& e : pairs) list.push_back(pair_ids(p, e));
      return Outcome{{{"input", *input}},
                     {{"elements", p.size()}, {"count", pairs.size()}, {"pairs", list}}};
    };
  }
  {
    auto* c = poset->add_subcommand("check-realiser", "Check that extensions realise a poset");
    auto input = std::make_shared<std::string>();
    auto realiser = std::make_shared<std::string>();
    c->add_option("--input", *input, "Poset JSON file")->required();
    c->add_option("--realiser", *realiser, "Realiser JSON file")->required();
    handlers[c] = [input, realiser](const Globals& g) {
      const Poset p = poset_from_json(read_json_file(*input), g.caps);
      json rj = read_json_file(*realiser);
      if (rj.is_object() && rj.contains("realiser")) rj = rj["realiser"];
      Outcome o{{{"input", *input}, {"realiser", *realiser}}, {}};
      try {
        const auto exts = realiser_from_json(p, rj);
        const auto v = is_realiser(p, exts);
        o.result = {{"is_realiser", v.ok}, {"size", exts.size()}};
        if (v.witness) o.result["witness"] = pair_ids(p, *v.witness);
        o.code = v.ok ? kExitOk : kExitFalse;
      } catch (const InvalidExtension& e) {
        o.result = {{"is_realiser", false}, {"reason", e.what()}};
        o.code = kExitFalse;
      }
      return o;
    };
  }
  {
    auto* c = poset->add_subcommand("hypercube", "Subsets of {1..n} by inclusion");
    auto n = std::make_shared<int>(0);
    auto layers = std::make_shared<std::vector<int>>();
    c->add_option("--n", *n, "Ground set size")->required()->check(CLI::Range(0, 20));
    c->add_option("--layers", *layers, "Subset sizes to keep (default all)")->delimiter(',');
    handlers[c] = [n, layers](const Globals& g) {
      const Poset p = layers->empty() ? hypercube(*n, g.caps) : hypercube_layers(*n, *layers, g.caps);
      return Outcome{{{"n", *n}, {"layers", *layers}}, {{"poset", poset_to_json(p)}}};
    };
  }
  for (const std::string name : {"product", "union"}) {
    auto* c = poset->add_subcommand(name, name == "product" ? "Product order of two posets"
                                                            : "Disjoint union of two posets");
    auto left = std::make_shared<std::string>();
    auto right = std::make_shared<std::string>();
    c->add_option("--left", *left, "Poset JSON file")->required();
    c->add_option("--right", *right, "Poset JSON file")->required();
    handlers[c] = [left, right, name](const Globals& g) {
      const Poset a = poset_from_json(read_json_file(*left), g.caps);
      const Poset b = poset_from_json(read_json_file(*right), g.caps);
      const Poset p = name == "product" ? product(a, b, g.caps) : disjoint_union(a, b, g.caps);
      return Outcome{{{"left", *left}, {"right", *right}}, {{"poset", poset_to_json(p)}}};
    };
  }
}

// ----- dim -----

void add_dim_commands(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* dim = app.add_subcommand("dim", "Dimension computations");
  dim->require_subcommand(1);
  auto* c = dim->add_subcommand("exact", "Exact dimension by branch and bound");
  auto input = std::make_shared<std::string>();
  auto max_d = std::make_shared<int>(8);
  c->add_option("--input", *input, "Poset JSON file")->required();
  c->add_option("--max-d", *max_d, "Give up above this dimension")->check(CLI::PositiveNumber);
  handlers[c] = [input, max_d](const Globals& g) {
    const Poset p = poset_from_json(read_json_file(*input), g.caps);
    const auto r = exact_dimension(p, *max_d, g.caps);
    json result = {{"elements", p.size()},
                   {"dimension", r.dimension ? json(*r.dimension) : json(nullptr)},
                   {"exceeds_max_d", !r.dimension},
                   {"lower_bound", r.lower_bound},
                   {"critical_pairs", r.critical_pair_count},
                   {"search_nodes", r.search_nodes}};
    result["realiser"] = realiser_to_json(p, r.realiser);
    return Outcome{{{"input", *input}, {"max_d", *max_d}}, result};
  };
}

// ----- multiset -----

void add_multiset_commands(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* ms = app.add_subcommand("multiset", "Weighted multiset posets");
  ms->require_subcommand(1);

  struct InstanceOpts {
    int n = -1;
    std::string weights = "ones";
    std::string k, l;
    bool emit = false;
  };
  const auto instance_options = [](CLI::App* c, InstanceOpts& o) {
    c->add_option("--n", o.n, "Ground set size (required for ones/log-primes)");
    c->add_option("--weights", o.weights,
                  "ones | log-primes | degrees:1,1,2 | rationals:1/2,3/2")
        ->capture_default_str();
    c->add_option("--k", o.k, "Lower size bound (number or log(x))")->required();
    c->add_option("--l,--ell", o.l, "Upper size bound (number or log(x))")->required();
  };
  const auto instance_params = [](const InstanceOpts& o, const WeightVector& v) {
    return json{{"n", v.size()}, {"weights", v.spec()}, {"k", o.k}, {"l", o.l}};
  };

  {
    auto* c = ms->add_subcommand("realiser", "Realiser from the L1 and L2 families");
    auto o = std::make_shared<InstanceOpts>();
    instance_options(c, *o);
    c->add_flag("--emit-realiser", o->emit, "Include the extensions in the report");
    handlers[c] = [o, instance_params](const Globals& g) {
      const auto v = WeightVector::parse(o->weights, o->n);
      const auto interval = parse_interval(o->k, o->l, v);
      const auto m = build_realiser_multiset(v, interval, g.seed, g.caps);
      Outcome out{instance_params(*o, v), to_json(m)};
      if (o->emit && m.poset) out.result["extensions"] = realiser_to_json(m.poset->poset, m.realiser);
      const bool certified = m.certification && m.certification->ok;
      out.code = (m.certification && !certified) || !m.within_bound() ? kExitFalse : kExitOk;
      maybe_csv(g, {"multiset", v.spec() + " [" + o->k + "," + o->l + "]",
                    m.plan.route == MultisetRoute::kUnweighted ? "unweighted" : "weighted",
                    m.size(), static_cast<double>(m.plan.bound_limit()),
                    m.certification ? std::optional<bool>(certified) : std::nullopt});
      return out;
    };
  }
  {
    auto* c = ms->add_subcommand("enumerate", "The multiset interval poset");
    auto o = std::make_shared<InstanceOpts>();
    instance_options(c, *o);
    handlers[c] = [o, instance_params](const Globals& g) {
      const auto v = WeightVector::parse(o->weights, o->n);
      const auto mp = enumerate_poset(v, parse_interval(o->k, o->l, v), g.caps);
      return Outcome{instance_params(*o, v),
                     {{"elements", mp.elements.size()}, {"poset", poset_to_json(mp.poset)}}};
    };
  }
  {
    auto* c = ms->add_subcommand("l1", "Lexicographic covering family");
    auto n = std::make_shared<int>(0);
    auto r = std::make_shared<double>(1);
    c->add_option("--n", *n, "Ground set size")->required();
    c->add_option("--r", *r, "Covering parameter (>= 1)")->required();
    handlers[c] = [n, r](const Globals& g) {
      const auto l1 = build_L1(*n, *r, g.seed, g.caps);
      Outcome o{{{"n", *n}, {"r", *r}}, to_json(l1)};
      o.code = l1.verified ? kExitOk : kExitFalse;
      return o;
    };
  }
  {
    auto* c = ms->add_subcommand("good-function", "Random good function with verification");
    auto p = std::make_shared<GoodFunctionParams>();
    c->add_option("--n", p->n, "Ground set size")->required();
    c->add_option("--r", p->r, "Parts must exceed r")->required();
    c->add_option("--a", p->a, "Parts per partition (default 3r)");
    c->add_option("--b", p->b, "Subset size (default 3r)");
    c->add_option("--t", p->t, "Number of partitions (default ceil(3 log n))");
    handlers[c] = [p](const Globals& g) {
      GoodFunctionParams q = *p;
      if (q.a == 0) q.a = 3 * q.r;
      if (q.b == 0) q.b = 3 * q.r;
      if (q.t == 0) q.t = static_cast<int>(std::ceil(3 * std::log(static_cast<double>(q.n))));
      const auto s = sample_good_function(q, g.seed, g.caps);
      json result = to_json(s);
      result["table"] = s.function.table();
      return Outcome{{{"n", q.n}, {"r", q.r}, {"a", q.a}, {"b", q.b}, {"t", q.t}}, result};
    };
  }
}

// ----- div -----

void add_div_commands(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* dv = app.add_subcommand("div", "Divisibility posets on integer intervals");
  dv->require_subcommand(1);

  struct IntervalOpts {
    std::uint64_t N = 1;
    std::string kappa = "2";
    bool emit = false;
    IntervalSpec spec() const { return {N, parse_rational(kappa)}; }
  };
  const auto interval_options = [](CLI::App* c, IntervalOpts& o) {
    c->add_option("--N", o.N, "Top of the interval")->required();
    c->add_option("--kappa", o.kappa, "Ratio, e.g. 6 or 3/2")->required();
  };

  {
    auto* c = dv->add_subcommand("build", "The divisibility poset on [N/kappa, N]");
    auto o = std::make_shared<IntervalOpts>();
    interval_options(c, *o);
    handlers[c] = [o](const Globals& g) {
      const auto spec = o->spec();
      const auto values = interval_integers(spec, g.caps);
      return Outcome{spec.to_json(),
                     {{"elements", values.size()},
                      {"poset", poset_to_json(build_divisibility_poset(values, g.caps))}}};
    };
  }
  {
    auto* c = dv->add_subcommand("decompose", "Split into components and verify");
    auto o = std::make_shared<IntervalOpts>();
    interval_options(c, *o);
    handlers[c] = [o](const Globals& g) {
      const auto spec = o->spec();
      const auto d = decompose_interval(spec, g.caps);
      const auto check = verify_decomposition(d, g.caps);
      Outcome out{spec.to_json(),
                  {{"components", component_summary(d.decomposition)},
                   {"small_primes", d.small_primes},
                   {"check", to_json(check, d)}}};
      out.code = check.ok() ? kExitOk : kExitFalse;
      return out;
    };
  }
  {
    auto* c = dv->add_subcommand("bound", "Dimension upper bounds for the interval");
    auto kappa = std::make_shared<std::string>();
    c->add_option("--kappa", *kappa, "Ratio")->required();
    handlers[c] = [kappa](const Globals& g) {
      return Outcome{{{"kappa", *kappa}},
                     to_json(dimension_bound_interval(parse_rational(*kappa), g.caps))};
    };
  }
  {
    auto* c = dv->add_subcommand("realiser", "Certified realiser of the interval poset");
    auto o = std::make_shared<IntervalOpts>();
    interval_options(c, *o);
    c->add_flag("--emit-realiser", o->emit, "Include the extensions in the report");
    handlers[c] = [o](const Globals& g) {
      const auto spec = o->spec();
      const auto r = build_interval_realiser(spec, g.seed, g.caps);
      Outcome out{spec.to_json(), to_json(r)};
      if (o->emit && r.poset) out.result["extensions"] = realiser_to_json(*r.poset, r.merged.extensions);
      const bool certified = r.certification && r.certification->ok;
      out.code = r.certification && !certified ? kExitFalse : kExitOk;
      maybe_csv(g, {"interval", "N=" + std::to_string(o->N) + " kappa=" + o->kappa,
                    r.merged.route, r.size(), r.bound.minimum.convert_to<double>(),
                    r.certification ? std::optional<bool>(certified) : std::nullopt});
      return out;
    };
  }
  {
    auto* c = dv->add_subcommand("verify-appendix-a", "Primorial and Robin-bound trace");
    auto kappa = std::make_shared<std::string>();
    c->add_option("--kappa", *kappa, "Ratio (>= 3)")->required();
    handlers[c] = [kappa](const Globals& g) {
      const auto a = verify_appendix_a(parse_rational(*kappa), g.caps);
      Outcome out{{{"kappa", *kappa}}, to_json(a)};
      out.code = a.ok() ? kExitOk : kExitFalse;
      return out;
    };
  }
}

// ----- poly -----

void add_poly_commands(CLI::App& app, std::map<CLI::App*, Handler>& handlers) {
  auto* pl = app.add_subcommand("poly", "Divisibility posets of polynomials over F_q");
  pl->require_subcommand(1);

  struct PolyOpts {
    std::uint32_t q = 2;
    int d0 = 0;
    int delta = 0;
    bool emit = false;
    json params() const { return PolyPosetSpec{q, d0, delta}.to_json(); }
  };
  const auto range_options = [](CLI::App* c, PolyOpts& o) {
    c->add_option("--q", o.q, "Field size (prime power)")->required();
    c->add_option("--d0", o.d0, "Top degree")->required();
    c->add_option("--delta", o.delta, "Degree window")->required();
  };

  {
    auto* c = pl->add_subcommand("irreducibles", "Monic irreducibles up to a degree");
    auto o = std::make_shared<PolyOpts>();
    c->add_option("--q", o->q, "Field size (prime power)")->required();
    c->add_option("--delta", o->delta, "Largest degree")->required();
    c->add_flag("--list", o->emit, "List the polynomials");
    handlers[c] = [o](const Globals& g) {
      const FiniteField f(o->q);
      const auto irr = irreducibles_up_to_degree(f, o->delta, g.caps);
      Outcome out{{{"q", o->q}, {"delta", o->delta}}, to_json(irr, f, o->emit)};
      out.code = irr.matches_oracle ? kExitOk : kExitFalse;
      return out;
    };
  }
  {
    auto* c = pl->add_subcommand("build", "Monic polynomials of degree d0-delta..d0");
    auto o = std::make_shared<PolyOpts>();
    range_options(c, *o);
    handlers[c] = [o](const Globals& g) {
      PolyPosetSpec{o->q, o->d0, o->delta}.validate();
      const FiniteField f(o->q);
      const Poset p = build_poly_poset(f, o->d0, o->delta, g.caps);
      return Outcome{o->params(), {{"elements", p.size()}, {"poset", poset_to_json(p)}}};
    };
  }
  {
    auto* c = pl->add_subcommand("decompose", "Split into components and verify");
    auto o = std::make_shared<PolyOpts>();
    range_options(c, *o);
    handlers[c] = [o](const Globals& g) {
      const FiniteField f(o->q);
      const auto d = decompose_poly_poset(f, o->d0, o->delta, g.caps);
      const auto check = verify_decomposition(f, d, g.caps);
      Outcome out{o->params(),
                  {{"components", component_summary(d.decomposition)},
                   {"check", to_json(check, d)}}};
      out.code = check.ok() ? kExitOk : kExitFalse;
      return out;
    };
  }
  {
    auto* c = pl->add_subcommand("bound", "Dimension upper bounds");
    auto o = std::make_shared<PolyOpts>();
    c->add_option("--q", o->q, "Field size")->required();
    c->add_option("--delta", o->delta, "Degree window")->required();
    handlers[c] = [o](const Globals&) {
      return Outcome{{{"q", o->q}, {"delta", o->delta}}, to_json(dimension_bound_poly(o->q, o->delta))};
    };
  }
  {
    auto* c = pl->add_subcommand("realiser", "Certified realiser of the polynomial poset");
    auto o = std::make_shared<PolyOpts>();
    range_options(c, *o);
    c->add_flag("--emit-realiser", o->emit, "Include the extensions in the report");
    handlers[c] = [o](const Globals& g) {
      const FiniteField f(o->q);
      const auto r = build_poly_realiser(f, o->d0, o->delta, g.seed, g.caps);
      Outcome out{o->params(), to_json(r)};
      if (o->emit && r.poset) out.result["extensions"] = realiser_to_json(*r.poset, r.merged.extensions);
      const bool certified = r.certification && r.certification->ok;
      const bool within = !r.bound || HighFloat(r.size()) <= r.bound->minimum;
      out.code = (r.certification && !certified) || !within ? kExitFalse : kExitOk;
      maybe_csv(g, {"poly",
                    "q=" + std::to_string(o->q) + " d0=" + std::to_string(o->d0) +
                        " delta=" + std::to_string(o->delta),
                    r.merged.route, r.size(),
                    r.bound ? r.bound->minimum.convert_to<double>() : 0.0,
                    r.certification ? std::optional<bool>(certified) : std::nullopt});
      return out;
    };
  }
  {
    auto* c = pl->add_subcommand("verify-appendix-b", "Counting checks behind the bound");
    auto o = std::make_shared<PolyOpts>();
    c->add_option("--q", o->q, "Field size")->required();
    c->add_option("--delta", o->delta, "Degree window (>= 2)")->required();
    handlers[c] = [o](const Globals& g) {
      const auto b = verify_appendix_b(o->q, o->delta, g.caps);
      Outcome out{{{"q", o->q}, {"delta", o->delta}}, to_json(b)};
      out.code = b.ok() ? kExitOk : kExitFalse;
      return out;
    };
  }
}

// ----- accept -----

void add_accept_command(CLI::App& app, std::map<CLI::App*, Handler>& handlers,
                        std::ostream& err) {
  auto* c = app.add_subcommand("accept", "Run the acceptance criteria");
  auto config = std::make_shared<std::string>();
  auto criteria = std::make_shared<std::vector<int>>();
  auto corrupt = std::make_shared<std::vector<std::string>>();
  c->add_option("--config", *config, "Config JSON; without it every criterion runs");
  c->add_option("--criteria", *criteria, "Criterion ids, e.g. 1,3,5")->delimiter(',');
  c->add_option("--corrupt", *corrupt, "Negative-control corruption")->delimiter(',');
  handlers[c] = [config, criteria, corrupt, &err](const Globals& g) {
    AcceptanceConfig cfg;
    if (!config->empty()) {
      cfg = AcceptanceConfig::from_json(read_json_file(*config), g.caps);
    } else {
      cfg = AcceptanceConfig::full();
      cfg.caps = g.caps;
      cfg.seed = g.seed;
    }
    if (!criteria->empty()) {
      cfg.criteria = *criteria;
    }
    for (const auto& name : *corrupt) cfg.corrupt.push_back(name);
    cfg.jobs = std::max(cfg.jobs, g.jobs);
    // Re-validate the merged settings.
    cfg = AcceptanceConfig::from_json({{"criteria", cfg.criteria},
                                       {"seed", cfg.seed},
                                       {"jobs", cfg.jobs},
                                       {"corrupt", cfg.corrupt}},
                                      cfg.caps);
    const auto summary = run_acceptance_suite(cfg);
    for (const auto& r : summary.results) err << summary_line(r) << '\n';
    Outcome out{{{"criteria", cfg.criteria},
                 {"seed", cfg.seed},
                 {"jobs", cfg.jobs},
                 {"corrupt", cfg.corrupt}},
                summary.result_json()};
    out.timing = summary.timing_json();
    out.code = summary.all_pass() ? kExitOk : kExitFalse;
    return out;
  };
}

std::string command_path(const CLI::App* leaf) {
  std::vector<std::string> parts;
  for (const CLI::App* a = leaf; a != nullptr && a->get_parent() != nullptr; a = a->get_parent()) {
    parts.push_back(a->get_name());
  }
  std::reverse(parts.begin(), parts.end());
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
  return s;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dimension of posets: exact search and certified realisers", "posetdim"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--out", g.out, "Write the JSON report here instead of stdout");
  app.add_option("--caps", g.caps_path, "JSON file overriding size and work caps");
  app.add_option("--jobs", g.jobs, "Parallel acceptance items")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--csv", g.csv, "Append bound-versus-size rows to this CSV file");
  // Global flags may follow the subcommand.
  app.fallthrough();

  std::map<CLI::App*, Handler> handlers;
  add_poset_commands(app, handlers);
  add_dim_commands(app, handlers);
  add_multiset_commands(app, handlers);
  add_div_commands(app, handlers);
  add_poly_commands(app, handlers);
  add_accept_command(app, handlers, err);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
  const auto it = handlers.find(const_cast<CLI::App*>(leaf));
  if (it == handlers.end()) {
    err << "error: incomplete command\n";
    return kExitUsage;
  }

  const Stopwatch watch;
  Outcome outcome;
  try {
    if (!g.caps_path.empty()) g.caps = load_caps(g.caps_path);
    outcome = it->second(g);
  } catch (const RetryLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitFalse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  outcome.params["seed"] = g.seed;
  outcome.params["caps"] = caps_to_json(g.caps);
  json timing = watch.timing();
  timing.update(outcome.timing);
  const json report = make_report(command_path(leaf), outcome.params, outcome.result, timing);
  try {
    if (g.out.empty()) {
      out << report.dump(2) << '\n';
    } else {
      write_json_file(g.out, report);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return outcome.code;
}

}  // namespace posetdim
