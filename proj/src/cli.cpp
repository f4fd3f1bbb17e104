#include "smo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "smo/analytic.hpp"
#include "smo/catalog.hpp"
#include "smo/characters.hpp"
#include "smo/distinguisher.hpp"
#include "smo/errors.hpp"
#include "smo/io.hpp"
#include "smo/primes.hpp"
#include "smo/rankin_selberg.hpp"
#include "smo/smoothing.hpp"

namespace smo::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kCommands = {"coeffs",       "smooth-sum",   "distinguish", "threshold",
                                            "verify-lemma", "mellin-sweep", "gamma-sweep", "primes"};

bool is_command(const std::string& s) {
  return std::find(kCommands.begin(), kCommands.end(), s) != kCommands.end();
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string token_for(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_object()) return v.dump();
  throw ConfigError("unsupported config value: " + v.dump());
}

// Expands a JSON job config into command-line tokens: {"command": c, "key": v}
// becomes [c, --key, v]; arrays repeat their elements, true booleans become flags.
std::vector<std::string> config_tokens(const std::string& path, std::string& command) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config: " + path);
  json j;
  try {
    j = json::parse(file);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (!value.is_string()) throw ConfigError("config \"command\" must be a string");
      command = value.get<std::string>();
      continue;
    }
    if (key == "config") throw ConfigError("config files cannot nest");
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_array()) {
      // A nested array is one grouped occurrence (e.g. a pair of specs).
      bool nested = std::any_of(value.begin(), value.end(), [](const json& e) { return e.is_array(); });
      if (nested) {
        for (const auto& group : value) {
          tokens.push_back(flag);
          for (const auto& e : group) tokens.push_back(token_for(e));
        }
      } else {
        tokens.push_back(flag);
        for (const auto& e : value) tokens.push_back(token_for(e));
      }
    } else {
      tokens.push_back(flag);
      tokens.push_back(token_for(value));
    }
  }
  return tokens;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::string command;
  std::vector<std::string> extra = config_tokens(*path, command);

  std::vector<std::string> out;
  auto cmd_it = std::find_if(args.begin(), args.end(), is_command);
  if (cmd_it != args.end()) {
    out.assign(args.begin(), cmd_it + 1);
    out.insert(out.end(), extra.begin(), extra.end());
    out.insert(out.end(), cmd_it + 1, args.end());
  } else {
    if (command.empty()) throw ConfigError("config has no \"command\" and none was given");
    out = args;
    out.push_back(command);
    out.insert(out.end(), extra.begin(), extra.end());
  }
  return out;
}

struct GlobalOptions {
  std::string config;
  std::string out_path;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct RepOptions {
  std::vector<std::string> reps;
  std::vector<std::string> pair;
  bool self = false;
};

void add_rep_options(CLI::App* cmd, RepOptions& o) {
  cmd->add_option("--rep", o.reps, "Representation spec (JSON file or inline JSON); repeat for a pair");
  cmd->add_option("--pair", o.pair, "Two representation specs")->expected(2);
  cmd->add_flag("--self", o.self, "Pair the single --rep with itself");
}

std::pair<RepresentationSpec, RepresentationSpec> resolve_pair(const RepOptions& o) {
  std::vector<std::string> items = o.pair.empty() ? o.reps : o.pair;
  if (!o.pair.empty() && !o.reps.empty()) throw PreconditionError("give either --pair or --rep, not both");
  if (o.self) {
    if (items.size() != 1) throw PreconditionError("--self needs exactly one representation");
    const auto spec = load_spec(items[0]);
    return {spec, spec};
  }
  if (items.size() != 2) throw PreconditionError("need two representations (or one with --self)");
  return {load_spec(items[0]), load_spec(items[1])};
}

std::uint32_t prime_bound_for(double n) {
  if (!(n >= 0.0) || n > 4e9) throw PreconditionError("requested length out of range");
  return std::max<std::uint32_t>(kDefaultPrimeBound, static_cast<std::uint32_t>(std::ceil(n)));
}

// Builds both representations, sharing one object when the specs coincide.
std::pair<Representation, Representation> build_pair(const RepresentationSpec& a, const RepresentationSpec& b,
                                                     std::uint32_t prime_bound) {
  Representation ra = make_representation(a, prime_bound);
  if (a.same_representation(b) && a.label == b.label) return {ra, ra};
  return {ra, make_representation(b, prime_bound)};
}

std::vector<double> t_grid(const std::vector<double>& explicit_t, double t_min, double t_max, std::size_t steps,
                           const std::string& spacing) {
  if (!explicit_t.empty()) return explicit_t;
  if (!(t_min > 0.0) || !(t_max > t_min) || steps < 2)
    throw PreconditionError("t grid needs 0 < t-min < t-max and steps >= 2");
  std::vector<double> t(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(steps - 1);
    t[i] = spacing == "log" ? t_min * std::pow(t_max / t_min, f) : t_min + (t_max - t_min) * f;
  }
  return t;
}

Complex parse_complex(const std::string& s) {
  const auto colon = s.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0.0};
    }
    const std::string re_s = s.substr(0, colon), im_s = s.substr(colon + 1);
    const double re = std::stod(re_s, &used);
    if (used != re_s.size()) throw std::invalid_argument(s);
    const double im = std::stod(im_s, &used);
    if (used != im_s.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::logic_error&) {
    throw PreconditionError("bad b value '" + s + "' (expected RE or RE:IM)");
  }
}

const char* verdict_name(Verdict v) { return v == Verdict::Distinct ? "Distinct" : "IndistinguishableUpTo"; }

std::string opt_prime(const std::optional<std::uint32_t>& p) { return p ? std::to_string(*p) : ""; }

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rankin-Selberg coefficient and smoothed-sum toolkit"};
  app.name("smo");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config, "JSON job config; keys mirror the long flags");
  app.add_option("--out", g.out_path, "Write results here instead of stdout");
  app.add_option("--seed", g.seed, "Seed for randomized sweeps");
  app.add_option("--threads", g.threads, "Worker threads for smoothed sums")->check(CLI::Range(1u, 256u));

  // coeffs
  RepOptions coeffs_reps;
  std::size_t coeffs_nmax = 0;
  auto* coeffs = app.add_subcommand("coeffs", "Export Rankin-Selberg Dirichlet coefficients as CSV");
  add_rep_options(coeffs, coeffs_reps);
  coeffs->add_option("--nmax", coeffs_nmax, "Largest n")->required();

  // smooth-sum
  RepOptions sum_reps;
  std::vector<double> sum_x;
  auto* smooth = app.add_subcommand("smooth-sum", "Smoothed sums S(x) of a pair");
  add_rep_options(smooth, sum_reps);
  smooth->add_option("--x", sum_x, "Scale(s) x")->required();

  // distinguish
  RepOptions dist_reps;
  double dist_x = 0.0;
  double dist_h = 10.0;
  auto* dist = app.add_subcommand("distinguish", "Decide whether two representations differ up to x");
  add_rep_options(dist, dist_reps);
  dist->add_option("--x", dist_x, "Scale x")->required();
  dist->add_option("--H", dist_h, "H in the reported threshold Q^{4N+2N/H}");

  // threshold
  std::vector<std::vector<std::string>> thr_pairs;
  std::uint32_t thr_max_modulus = 0;
  double thr_h = 10.0;
  std::string thr_rule = "max";
  std::uint32_t thr_limit = 100'000;
  auto* thr = app.add_subcommand("threshold", "First disagreeing prime against the threshold, per pair");
  thr->add_option("--pair", thr_pairs, "Two representation specs; repeatable")->expected(2);
  thr->add_option("--max-modulus", thr_max_modulus,
                  "Add every pair of distinct primitive characters with modulus up to this value");
  thr->add_option("--H", thr_h, "H in Q^{4N+2N/H}");
  thr->add_option("--rule", thr_rule, "Q rule: max (largest analytic conductor) or next (next integer)")
      ->check(CLI::IsMember({"max", "next"}));
  thr->add_option("--limit", thr_limit, "Largest prime searched");

  // verify-lemma
  int lemma_m = 1;
  std::size_t lemma_samples = 10'000;
  auto* lemma = app.add_subcommand("verify-lemma", "Random sweep of the self-pair coefficient at p^m");
  lemma->add_option("--m", lemma_m, "Degree m")->required()->check(CLI::Range(1, 64));
  lemma->add_option("--samples", lemma_samples, "Number of random classes");

  // mellin-sweep and gamma-sweep share the t grid flags
  struct GridOptions {
    std::vector<double> sigma;
    std::vector<double> t;
    double t_min = 1.0;
    double t_max = 100.0;
    std::size_t steps = 30;
    std::string spacing = "log";
  };
  auto add_grid = [](CLI::App* cmd, GridOptions& o) {
    cmd->add_option("--sigma", o.sigma, "Real part(s)")->required();
    cmd->add_option("--t", o.t, "Explicit t values (overrides the generated grid)");
    cmd->add_option("--t-min", o.t_min, "Smallest t");
    cmd->add_option("--t-max", o.t_max, "Largest t");
    cmd->add_option("--steps", o.steps, "Grid points");
    cmd->add_option("--spacing", o.spacing, "log or linear")->check(CLI::IsMember({"log", "linear"}));
  };
  GridOptions mellin_grid;
  auto* mellin_cmd = app.add_subcommand("mellin-sweep", "CSV of |W(sigma + it)| over a t grid");
  add_grid(mellin_cmd, mellin_grid);

  GridOptions gamma_grid;
  std::vector<std::string> gamma_b;
  RepOptions gamma_reps;
  int gamma_m = 1, gamma_m_prime = 1;
  auto* gamma_cmd = app.add_subcommand("gamma-sweep", "CSV of |G(sigma + it)| and its Stirling bound ratio");
  add_grid(gamma_cmd, gamma_grid);
  gamma_cmd->add_option("--b", gamma_b, "Archimedean parameters as RE or RE:IM");
  gamma_cmd->add_option("--m", gamma_m, "Degree m")->check(CLI::Range(1, 64));
  gamma_cmd->add_option("--m-prime", gamma_m_prime, "Degree m'")->check(CLI::Range(1, 64));
  add_rep_options(gamma_cmd, gamma_reps);

  // primes
  std::uint64_t primes_limit = 0;
  std::vector<double> primes_x;
  int primes_m = 1;
  bool primes_list = false;
  auto* primes_cmd = app.add_subcommand("primes", "Prime counts and window counts");
  primes_cmd->add_option("--limit", primes_limit, "Sieve limit");
  primes_cmd->add_option("--x", primes_x, "Window count of primes in [(x/2)^{1/m}, x^{1/m}]");
  primes_cmd->add_option("--m", primes_m, "Window exponent m")->check(CLI::Range(1, 64));
  primes_cmd->add_flag("--list", primes_list, "List the primes up to --limit");

  // Flags from a config file come first, so a repeated scalar flag keeps its last value.
  auto take_last = [](CLI::App* a) {
    for (CLI::Option* opt : a->get_options())
      if (opt->get_items_expected_max() == 1) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  };
  take_last(&app);
  for (CLI::App* sub : app.get_subcommands({})) take_last(sub);

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "smo: " << e.what() << '\n';
    return kParseError;
  } catch (const ConfigError& e) {
    err << "smo: " << e.what() << '\n';
    return kParseError;
  }

  std::ostringstream buffer;
  std::ostream& o = buffer;
  int code = kOk;
  try {
    if (coeffs->parsed()) {
      const auto [sa, sb] = resolve_pair(coeffs_reps);
      if (coeffs_nmax == 0) throw PreconditionError("--nmax must be at least 1");
      const auto [ra, rb] = build_pair(sa, sb, prime_bound_for(static_cast<double>(coeffs_nmax)));
      write_series_csv(o, rs_series(ra, rb, coeffs_nmax));
    } else if (smooth->parsed()) {
      const auto [sa, sb] = resolve_pair(sum_reps);
      const double x_max = *std::max_element(sum_x.begin(), sum_x.end());
      for (double x : sum_x)
        if (!(x > 0.0)) throw PreconditionError("--x must be positive");
      const std::size_t n_max = std::max<std::size_t>(1, required_terms(x_max));
      const auto [ra, rb] = build_pair(sa, sb, prime_bound_for(static_cast<double>(n_max)));
      const auto series = rs_series(ra, rb, n_max);
      o << "x,re,im,terms_used,error_bound\n";
      for (double x : sum_x) {
        const auto s = smoothed_sum(series, x, g.threads);
        o << format_number(x) << ',' << format_number(s.value.real()) << ',' << format_number(s.value.imag())
          << ',' << s.terms_used << ',' << format_number(s.error_bound) << '\n';
      }
    } else if (dist->parsed()) {
      const auto [sa, sb] = resolve_pair(dist_reps);
      if (!(dist_x > 0.0)) throw PreconditionError("--x must be positive");
      const auto [ra, rb] = build_pair(sa, sb, prime_bound_for(3.0 * dist_x + 1.0));
      const auto r = distinguish(ra, rb, dist_x, dist_h);
      o << "label_a,label_b,verdict,x,evidence_prime,evidence_ramified,sum_self,sum_cross_re,sum_cross_im,"
           "margin,error_bound,sums_agree,Q,N,H,threshold_x\n";
      o << ra.label() << ',' << rb.label() << ',' << verdict_name(r.verdict) << ',' << format_number(r.x) << ','
        << opt_prime(r.evidence_prime) << ',' << (r.evidence_ramified ? 1 : 0) << ',' << format_number(r.sum_self)
        << ',' << format_number(r.sum_cross.real()) << ',' << format_number(r.sum_cross.imag()) << ','
        << format_number(r.margin) << ',' << format_number(r.error_bound) << ',' << (r.sums_agree ? 1 : 0) << ','
        << format_number(r.q) << ',' << r.n << ',' << format_number(r.h) << ',' << format_number(r.threshold_x)
        << '\n';
    } else if (thr->parsed()) {
      std::vector<RepresentationPair> pairs;
      std::map<std::string, Representation> cache;
      auto get = [&](const RepresentationSpec& spec) {
        const std::string key = spec_to_json(spec).dump();
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, make_representation(spec, prime_bound_for(thr_limit))).first;
        return it->second;
      };
      for (const auto& p : thr_pairs) {
        if (p.size() != 2) throw PreconditionError("--pair needs two specs");
        pairs.push_back({get(load_spec(p[0])), get(load_spec(p[1]))});
      }
      if (thr_max_modulus > 0) {
        std::vector<Representation> chars;
        for (std::uint32_t q = 1; q <= thr_max_modulus; ++q)
          for (std::uint64_t i : primitive_character_indices(q)) chars.push_back(dirichlet_character(q, i));
        for (std::size_t i = 0; i < chars.size(); ++i)
          for (std::size_t j = i + 1; j < chars.size(); ++j) pairs.push_back({chars[i], chars[j]});
      }
      if (pairs.empty()) throw PreconditionError("threshold needs --pair or --max-modulus");
      const auto rows = threshold_experiment(pairs, thr_h, thr_rule == "max" ? QRule::MaxAnalytic : QRule::NextInteger,
                                             thr_limit);
      o << "label_a,label_b,first_prime,conductor_a,conductor_b,Q,N,threshold,ratio\n";
      for (const auto& r : rows) {
        o << r.label_a << ',' << r.label_b << ',' << opt_prime(r.first_prime) << ',' << format_number(r.conductor_a)
          << ',' << format_number(r.conductor_b) << ',' << format_number(r.q) << ',' << r.n << ','
          << format_number(r.threshold) << ',' << format_number(r.ratio) << '\n';
      }
    } else if (lemma->parsed()) {
      if (lemma_samples == 0) throw PreconditionError("--samples must be positive");
      const auto r = brumley_sweep(lemma_m, lemma_samples, g.seed);
      o << "m,samples,seed,min_residual,max_imag\n";
      o << r.m << ',' << r.samples << ',' << g.seed << ',' << format_number(r.min_residual) << ','
        << format_number(r.max_imag) << '\n';
      if (r.min_residual < -1e-9 || r.max_imag > 1e-10) {
        err << "smo: lemma residual outside tolerance\n";
        code = kNumericError;
      }
    } else if (mellin_cmd->parsed()) {
      const auto ts = t_grid(mellin_grid.t, mellin_grid.t_min, mellin_grid.t_max, mellin_grid.steps,
                             mellin_grid.spacing);
      o << "sigma,t,abs_w,re,im,error_estimate\n";
      for (double sigma : mellin_grid.sigma) {
        for (double t : ts) {
          const auto w = mellin(Complex(sigma, t));
          o << format_number(sigma) << ',' << format_number(t) << ',' << format_number(std::abs(w.value)) << ','
            << format_number(w.value.real()) << ',' << format_number(w.value.imag()) << ','
            << format_number(w.error_estimate) << '\n';
        }
      }
    } else if (gamma_cmd->parsed()) {
      std::vector<Complex> b;
      int m = gamma_m, m_prime = gamma_m_prime;
      const bool has_reps = !gamma_reps.reps.empty() || !gamma_reps.pair.empty();
      if (has_reps && !gamma_b.empty()) throw PreconditionError("give either --b or representations, not both");
      if (has_reps) {
        const auto [sa, sb] = resolve_pair(gamma_reps);
        const auto [ra, rb] = build_pair(sa, sb, kDefaultPrimeBound);
        b = pair_conductor(ra, rb).b_pair;
        m = ra.degree();
        m_prime = rb.degree();
      } else {
        for (const auto& s : gamma_b) b.push_back(parse_complex(s));
      }
      if (b.empty()) throw PreconditionError("gamma-sweep needs --b or representations");
      if (b.size() != static_cast<std::size_t>(m * m_prime))
        throw PreconditionError("b list length must equal m * m'");
      const auto ts = t_grid(gamma_grid.t, gamma_grid.t_min, gamma_grid.t_max, gamma_grid.steps, gamma_grid.spacing);
      std::size_t excluded = 0;
      o << "sigma,t,abs_g,log_abs_g,bound_ratio,distance_to_excluded\n";
      for (double sigma : gamma_grid.sigma) {
        for (double t : ts) {
          const double dist_s = distance_to_excluded_set(t, b);
          if (dist_s < 0.0) {
            ++excluded;
            continue;
          }
          GammaRatioInput in{Complex(sigma, t), b, 1, m, m_prime};
          const Complex lg = log_gamma_ratio(in);
          const std::string ratio = sigma < 0.5 ? format_number(stirling_bound_ratio(in)) : "";
          o << format_number(sigma) << ',' << format_number(t) << ',' << format_number(std::exp(lg.real())) << ','
            << format_number(lg.real()) << ',' << ratio << ',' << format_number(dist_s) << '\n';
        }
      }
      if (excluded > 0) err << "smo: skipped " << excluded << " grid points inside the excluded set\n";
    } else if (primes_cmd->parsed()) {
      if (primes_limit == 0 && primes_x.empty()) throw PreconditionError("primes needs --limit or --x");
      if (primes_limit > 0) {
        const auto table = sieve(primes_limit);
        if (primes_list) {
          o << "p\n";
          for (std::uint32_t p : table.primes()) o << p << '\n';
        } else {
          o << "limit,count\n" << primes_limit << ',' << table.size() << '\n';
        }
      }
      if (!primes_x.empty()) {
        o << "x,m,window_count\n";
        for (double x : primes_x) o << format_number(x) << ',' << primes_m << ',' << window_count(x, primes_m) << '\n';
      }
    }
  } catch (const NumericError& e) {
    err << "smo: numeric failure: " << e.what() << " (best estimate " << format_number(e.best_estimate()) << ")\n";
    return kNumericError;
  } catch (const std::invalid_argument& e) {
    err << "smo: " << e.what() << '\n';
    return kPreconditionError;
  } catch (const std::out_of_range& e) {
    err << "smo: " << e.what() << '\n';
    return kPreconditionError;
  } catch (const std::bad_alloc&) {
    err << "smo: out of memory\n";
    return kPreconditionError;
  }

  if (g.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(g.out_path, std::ios::binary);
    if (!file) {
      err << "smo: cannot write " << g.out_path << '\n';
      return kPreconditionError;
    }
    file << buffer.str();
  }
  return code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace smo::cli
