#include "hypell/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "hypell/arith.hpp"
#include "hypell/expcurve.hpp"
#include "hypell/hyperbola2.hpp"
#include "hypell/hyperbola3.hpp"
#include "hypell/productset.hpp"

namespace hypell::experiment {

namespace {

constexpr i64 N_MAX_CAP = 10000000;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  for (;;) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      parts.push_back(s.substr(pos));
      return parts;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

i64 parse_int(const std::string& val, int lineno, const std::string& key) {
  try {
    std::size_t used = 0;
    const i64 x = std::stoll(val, &used);
    if (used != val.size()) throw std::invalid_argument("trailing junk");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(lineno) + ": key '" + key +
                      "' needs an integer, got '" + val + "'");
  }
}

u64 parse_u64(const std::string& val, int lineno, const std::string& key) {
  try {
    std::size_t used = 0;
    const u64 x = std::stoull(val, &used);
    if (used != val.size()) throw std::invalid_argument("trailing junk");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(lineno) + ": key '" + key +
                      "' needs a nonnegative integer, got '" + val + "'");
  }
}

bool parse_flag(const std::string& val, int lineno, const std::string& key) {
  if (val == "0") return false;
  if (val == "1") return true;
  throw ConfigError("config line " + std::to_string(lineno) + ": key '" + key + "' must be 0 or 1");
}

void parse_value_rule(const std::string& val, int lineno, const std::string& key, bool& fixed,
                      i64& value) {
  if (val == "random") {
    fixed = false;
    return;
  }
  if (val.rfind("fixed:", 0) == 0) {
    fixed = true;
    value = parse_int(val.substr(6), lineno, key);
    return;
  }
  throw ConfigError("config line " + std::to_string(lineno) + ": key '" + key +
                    "' must be 'random' or 'fixed:N'");
}

// --- per-trial instance parameters -----------------------------------------

i64 pick_prime(const ExperimentConfig& cfg, i64 trial, SplitMix64& rng) {
  if (!cfg.prime_list.empty())
    return cfg.prime_list[static_cast<std::size_t>(trial / std::max<i64>(cfg.trials, 1)) %
                          cfg.prime_list.size()];
  for (int tries = 0; tries < 200000; ++tries) {
    i64 c = rng.range(cfg.prime_lo, cfg.prime_hi) | 1;
    if (c < 3 || c > cfg.prime_hi) continue;
    if (arith::is_prime(static_cast<u64>(c))) return c;
  }
  throw Error("pick_prime: no prime found in [" + std::to_string(cfg.prime_lo) + ", " +
              std::to_string(cfg.prime_hi) + "]");
}

i64 m_of(const ExperimentConfig& cfg, i64 p) {
  i64 m;
  if (cfg.m_is_pow) {
    u128 pw = 1;
    for (i64 i = 0; i < cfg.m_num; ++i) {
      if (pw > (~static_cast<u128>(0)) / static_cast<u128>(p))
        throw Error("m_of: p^a overflows 128 bits");
      pw *= static_cast<u128>(p);
    }
    m = static_cast<i64>(ikth_root(pw, static_cast<unsigned>(cfg.m_den))) / cfg.m_div;
  } else {
    m = cfg.m_fixed;
  }
  return std::clamp<i64>(m, 1, p);
}

i64 lambda_of(const ExperimentConfig& cfg, i64 p, SplitMix64& rng) {
  if (!cfg.lambda_fixed) return rng.range(1, p - 1);
  const i64 lam = floor_mod(cfg.lambda_value, p);
  if (lam == 0) throw Error("lambda_rule: fixed value is 0 mod p");
  return lam;
}

i64 shift_of(bool fixed, i64 value, i64 p, SplitMix64& rng) {
  return fixed ? value : rng.range(0, p - 1);
}

// --- trial bodies -----------------------------------------------------------

void run_count2(const ExperimentConfig& cfg, TrialRecord& rec, SplitMix64& rng) {
  rec.p = pick_prime(cfg, rec.trial, rng);
  rec.M = m_of(cfg, rec.p);
  rec.lambda = lambda_of(cfg, rec.p, rng);
  rec.K = shift_of(cfg.k_fixed, cfg.k_value, rec.p, rng);
  rec.L = shift_of(cfg.l_fixed, cfg.l_value, rec.p, rng);
  const auto inst = hyperbola2::make_instance_2(rec.p, rec.lambda, rec.K, rec.L, rec.M);

  if (cfg.method == "brute") {
    rec.count = hyperbola2::count_brute_2(inst).count;
    rec.method = "brute";
    return;
  }
  const auto fast = hyperbola2::enumerate_fast_2(inst);
  rec.aux1 = fast.z_width;
  if (cfg.method == "fast") {
    rec.count = fast.count;
    rec.method = "fast";
    return;
  }
  const auto brute = hyperbola2::count_brute_2(inst);
  if (!(fast.solutions == brute.solutions))
    throw Error("count2 trial: fast and brute solution sets differ");
  rec.count = fast.count;
  rec.aux2 = brute.count;
  rec.method = "both";
}

void run_count3(const ExperimentConfig& cfg, TrialRecord& rec, SplitMix64& rng) {
  rec.p = pick_prime(cfg, rec.trial, rng);
  rec.M = m_of(cfg, rec.p);
  rec.lambda = lambda_of(cfg, rec.p, rng);
  const i64 p = rec.p, M = rec.M;

  if (cfg.plant_uv) {
    // seeded (u, v) inside the reconstruction caps, L = u / v mod p
    i64 U, V;
    if (static_cast<u128>(M) <= ikth_root(static_cast<u128>(p / 16), 8)) {
      U = M * M * M;
      V = M * M;
    } else {
      V = std::max<i64>(1, static_cast<i64>(ikth_root(static_cast<u128>(p), 4)) / 2);
      U = V * std::min<i64>(M, 1000);
    }
    U = std::min<i64>(U, 1000000);
    const i64 v = rng.range(1, V);
    const i64 u = rng.range(-U, U);
    rec.L = static_cast<i64>(mulmod_u64(static_cast<u64>(floor_mod(u, p)),
                                        static_cast<u64>(inv_mod(floor_mod(v, p), p)),
                                        static_cast<u64>(p)));
  } else {
    rec.L = shift_of(cfg.l_fixed, cfg.l_value, p, rng);
  }
  const auto inst = hyperbola3::make_instance_3(p, rec.lambda, rec.L, M);

  const bool applicable =
      hyperbola3::product_form_applicable(p, M) && hyperbola3::try_fast_context(inst).has_value();
  rec.aux1 = applicable ? 1 : 0;

  if (cfg.method == "brute") {
    rec.count = hyperbola3::count_brute_3(inst).count;
    rec.method = "brute";
    return;
  }
  if (cfg.method == "fast") {
    const auto res = hyperbola3::count_3(inst);
    rec.count = res.count;
    rec.method = res.method;
    return;
  }
  const auto res = hyperbola3::count_3(inst);
  const i64 brute = hyperbola3::count_brute_3(inst).count;
  if (res.count != brute) throw Error("count3 trial: dispatch and brute counts differ");
  rec.count = res.count;
  rec.aux2 = brute;
  rec.method = "both";
}

void run_expcurve(const ExperimentConfig& cfg, TrialRecord& rec, SplitMix64& rng) {
  rec.p = pick_prime(cfg, rec.trial, rng);
  const i64 p = rec.p;
  const i64 g = cfg.g_fixed ? cfg.g_value : (p <= 4 ? 2 : rng.range(2, p - 2));
  rec.lambda = lambda_of(cfg, p, rng);  // the curve coefficient a
  rec.K = shift_of(cfg.k_fixed, cfg.k_value, p, rng);
  rec.L = shift_of(cfg.l_fixed, cfg.l_value, p, rng);
  const i64 t = expcurve::multiplicative_order(g, p);
  rec.M = std::min(m_of(cfg, p), t);

  const auto inst = expcurve::make_expcurve(p, g, rec.lambda, rec.K, rec.L, rec.M);
  const auto res = expcurve::count_expcurve(inst);
  rec.count = res.count;
  rec.method = "direct";
  rec.aux1 = res.count <= 3000 ? expcurve::pigeonhole_pair_stat(inst).pair_count : -1;

  // densest window of length floor(p^(1/8)) among the hit y-values
  std::vector<i64> ys;
  ys.reserve(static_cast<std::size_t>(res.count));
  for (const auto& s : res.solutions.items()) ys.push_back(s[1]);
  std::sort(ys.begin(), ys.end());
  const i64 w = std::max<i64>(1, static_cast<i64>(ikth_root(static_cast<u128>(p), 8)));
  i64 best = 0;
  for (std::size_t i = 0, j = 0; i < ys.size(); ++i) {
    while (j < ys.size() && ys[j] <= ys[i] + w) ++j;
    best = std::max<i64>(best, static_cast<i64>(j - i));
  }
  rec.aux2 = best;
}

void run_productset(const ExperimentConfig& cfg, TrialRecord& rec, SplitMix64& rng) {
  rec.p = pick_prime(cfg, rec.trial, rng);
  const i64 p = rec.p;
  const i64 len = rng.range(1, std::min<i64>(cfg.len_max, p - 1));
  const i64 s1 = rng.range(1, p - len);
  const i64 s2 = rng.range(1, p - len);
  const i64 s3 = rng.range(1, p - len);
  const auto i1 = productset::make_interval_fp(p, s1, len);
  const auto i2 = productset::make_interval_fp(p, s2, len);
  const auto i3 = productset::make_interval_fp(p, s3, len);
  const auto rep = productset::product_lower_bound_report(i1, i2, i3);
  rec.K = s1;
  rec.L = s2;
  rec.lambda = s3;
  rec.M = len;
  rec.count = rep.cardinality;
  rec.aux1 = rep.W;
  rec.aux2 = static_cast<i64>(ceil_div128(rep.ratio.num, rep.ratio.den));
  rec.method = "direct";
}

void run_lemma_scan(const ExperimentConfig& cfg, TrialRecord& rec) {
  const i64 n_max = cfg.n_max;
  std::vector<i32> spf(static_cast<std::size_t>(n_max) + 1, 0);
  for (i64 i = 2; i <= n_max; ++i) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    for (i64 j = i; j <= n_max; j += i)
      if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = static_cast<i32>(i);
  }

  i64 violations = 0, max_in_window = 0;
  i64 w = 1;  // floor(n^(1/6)), ratcheted as n grows
  std::vector<i64> divs;
  for (i64 n = 2; n <= n_max; ++n) {
    while ((w + 1) * (w + 1) * (w + 1) * (w + 1) * (w + 1) * (w + 1) <= n) ++w;

    divs.assign(1, 1);
    i64 rest = n;
    while (rest > 1) {
      const i64 q = spf[static_cast<std::size_t>(rest)];
      int e = 0;
      while (rest % q == 0) {
        rest /= q;
        ++e;
      }
      const std::size_t k = divs.size();
      i64 qe = 1;
      for (int i = 1; i <= e; ++i) {
        qe *= q;
        for (std::size_t j = 0; j < k; ++j) divs.push_back(divs[j] * qe);
      }
    }
    std::sort(divs.begin(), divs.end());

    const u64 s = isqrt_u64(static_cast<u64>(n));
    const i64 csqrt = static_cast<i64>(s) * static_cast<i64>(s) == n ? static_cast<i64>(s)
                                                                     : static_cast<i64>(s) + 1;
    const std::size_t lo =
        static_cast<std::size_t>(std::lower_bound(divs.begin(), divs.end(), csqrt) - divs.begin());
    std::size_t j = lo;
    for (std::size_t i = lo; i < divs.size(); ++i) {
      if (j < i) j = i;
      while (j < divs.size() && divs[j] <= divs[i] + w) ++j;
      const i64 cnt = static_cast<i64>(j - i);
      max_in_window = std::max(max_in_window, cnt);
      if (cnt >= 3) ++violations;
    }
  }
  rec.M = n_max;
  rec.count = violations;
  rec.aux1 = max_in_window;
  rec.aux2 = n_max - 1;
  rec.method = "scan";
}

TrialRecord run_trial(const ExperimentConfig& cfg, i64 trial) {
  TrialRecord rec;
  rec.trial = trial;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    SplitMix64 rng = trial_rng(cfg.seed, static_cast<u64>(trial));
    if (cfg.kind == "count2")
      run_count2(cfg, rec, rng);
    else if (cfg.kind == "count3")
      run_count3(cfg, rec, rng);
    else if (cfg.kind == "expcurve")
      run_expcurve(cfg, rec, rng);
    else if (cfg.kind == "productset")
      run_productset(cfg, rec, rng);
    else
      run_lemma_scan(cfg, rec);
  } catch (const std::exception& e) {
    rec.method = "error";
    rec.error = e.what();
  }
  if (cfg.timings)
    rec.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return rec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  bool have_schema = false, have_kind = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "schema") {
      if (parse_int(val, lineno, key) != 1)
        throw ConfigError("config line " + std::to_string(lineno) + ": unsupported schema '" + val + "'");
      have_schema = true;
    } else if (key == "kind") {
      if (val != "count2" && val != "count3" && val != "expcurve" && val != "productset" &&
          val != "lemma-scan")
        throw ConfigError("config line " + std::to_string(lineno) + ": unknown kind '" + val + "'");
      cfg.kind = val;
      have_kind = true;
    } else if (key == "seed") {
      cfg.seed = parse_u64(val, lineno, key);
    } else if (key == "trials") {
      cfg.trials = parse_int(val, lineno, key);
      if (cfg.trials < 0)
        throw ConfigError("config line " + std::to_string(lineno) + ": trials must be >= 0");
    } else if (key == "method") {
      if (val != "brute" && val != "fast" && val != "both")
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": method must be brute, fast, or both");
      cfg.method = val;
    } else if (key == "primes") {
      if (val.rfind("list:", 0) == 0) {
        for (const std::string& tok : split(val.substr(5), ',')) {
          const i64 p = parse_int(trim(tok), lineno, key);
          if (p < 3 || p % 2 == 0 || !arith::is_prime(static_cast<u64>(p)))
            throw ConfigError("config line " + std::to_string(lineno) + ": '" + trim(tok) +
                              "' is not an odd prime");
          cfg.prime_list.push_back(p);
        }
        if (cfg.prime_list.empty())
          throw ConfigError("config line " + std::to_string(lineno) + ": empty prime list");
      } else if (val.rfind("range:", 0) == 0) {
        const auto parts = split(val.substr(6), ':');
        if (parts.size() != 2)
          throw ConfigError("config line " + std::to_string(lineno) + ": expected range:lo:hi");
        cfg.prime_lo = parse_int(parts[0], lineno, key);
        cfg.prime_hi = parse_int(parts[1], lineno, key);
        if (cfg.prime_lo < 3 || cfg.prime_hi < cfg.prime_lo)
          throw ConfigError("config line " + std::to_string(lineno) + ": need 3 <= lo <= hi");
        cfg.prime_range = true;
      } else {
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": primes must be list:p1,p2,... or range:lo:hi");
      }
    } else if (key == "m_rule") {
      if (val.rfind("fixed:", 0) == 0) {
        cfg.m_is_pow = false;
        cfg.m_fixed = parse_int(val.substr(6), lineno, key);
        if (cfg.m_fixed < 1)
          throw ConfigError("config line " + std::to_string(lineno) + ": fixed M must be >= 1");
      } else if (val.rfind("pow:", 0) == 0) {
        const auto parts = split(val.substr(4), ':');
        if (parts.size() != 2)
          throw ConfigError("config line " + std::to_string(lineno) + ": expected pow:a/b:c");
        const auto frac = split(parts[0], '/');
        if (frac.size() != 2)
          throw ConfigError("config line " + std::to_string(lineno) + ": exponent must be a/b");
        cfg.m_is_pow = true;
        cfg.m_num = parse_int(frac[0], lineno, key);
        cfg.m_den = parse_int(frac[1], lineno, key);
        cfg.m_div = parse_int(parts[1], lineno, key);
        if (cfg.m_num < 1 || cfg.m_num > 4 || cfg.m_den < 1 || cfg.m_den > 64 || cfg.m_div < 1)
          throw ConfigError("config line " + std::to_string(lineno) +
                            ": pow rule needs 1<=a<=4, 1<=b<=64, c>=1");
      } else {
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": m_rule must be fixed:N or pow:a/b:c");
      }
    } else if (key == "lambda_rule") {
      parse_value_rule(val, lineno, key, cfg.lambda_fixed, cfg.lambda_value);
    } else if (key == "k_rule") {
      parse_value_rule(val, lineno, key, cfg.k_fixed, cfg.k_value);
    } else if (key == "l_rule") {
      parse_value_rule(val, lineno, key, cfg.l_fixed, cfg.l_value);
    } else if (key == "g_rule") {
      parse_value_rule(val, lineno, key, cfg.g_fixed, cfg.g_value);
      if (cfg.g_fixed && cfg.g_value < 2)
        throw ConfigError("config line " + std::to_string(lineno) + ": fixed g must be >= 2");
    } else if (key == "plant_uv") {
      cfg.plant_uv = parse_flag(val, lineno, key);
    } else if (key == "len_max") {
      cfg.len_max = parse_int(val, lineno, key);
      if (cfg.len_max < 1)
        throw ConfigError("config line " + std::to_string(lineno) + ": len_max must be >= 1");
    } else if (key == "n_max") {
      cfg.n_max = parse_int(val, lineno, key);
      if (cfg.n_max < 2 || cfg.n_max > N_MAX_CAP)
        throw ConfigError("config line " + std::to_string(lineno) + ": n_max must be in [2, " +
                          std::to_string(N_MAX_CAP) + "]");
    } else if (key == "timings") {
      cfg.timings = parse_flag(val, lineno, key);
    } else if (key == "out") {
      cfg.out = val;
    } else if (key == "format") {
      if (val != "tsv" && val != "jsonl")
        throw ConfigError("config line " + std::to_string(lineno) + ": format must be tsv or jsonl");
      cfg.format = val;
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }

  if (!have_schema) throw ConfigError("config: missing required schema=1");
  if (!have_kind) throw ConfigError("config: missing required kind=");
  if (cfg.kind != "lemma-scan" && cfg.prime_list.empty() && !cfg.prime_range)
    throw ConfigError("config: kind '" + cfg.kind + "' needs a primes= source");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads) {
  i64 total;
  if (cfg.kind == "lemma-scan")
    total = cfg.trials >= 1 ? 1 : 0;
  else if (!cfg.prime_list.empty())
    total = cfg.trials * static_cast<i64>(cfg.prime_list.size());
  else
    total = cfg.trials;

  ExperimentResult out;
  out.records.resize(static_cast<std::size_t>(total));

  if (threads <= 1 || total <= 1) {
    for (i64 i = 0; i < total; ++i) out.records[static_cast<std::size_t>(i)] = run_trial(cfg, i);
  } else {
    std::atomic<i64> next{0};
    auto worker = [&]() {
      for (;;) {
        const i64 i = next.fetch_add(1);
        if (i >= total) return;
        out.records[static_cast<std::size_t>(i)] = run_trial(cfg, i);
      }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, 64);
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Summary& s = out.summary;
  s.trials = total;
  double count_sum = 0, residual_sum = 0;
  i64 counted = 0;
  for (const auto& r : out.records) {
    if (r.method == "error") {
      ++s.errored;
      if (s.error_lines.size() < 10)
        s.error_lines.push_back("trial " + std::to_string(r.trial) + ": " + r.error);
      continue;
    }
    ++counted;
    count_sum += static_cast<double>(r.count);
    s.max_count = std::max(s.max_count, r.count);
    if (cfg.kind == "count2") {
      if (static_cast<u128>(r.M) * r.M * r.M * r.M < static_cast<u128>(r.p))
        s.max_count_small_m = std::max(s.max_count_small_m, r.count);
      const double residual =
          static_cast<double>(r.count) - static_cast<double>(r.M) * static_cast<double>(r.M) /
                                             static_cast<double>(r.p);
      residual_sum += residual;
      s.max_abs_residual = std::max(s.max_abs_residual, std::abs(residual));
    }
  }
  if (counted > 0) {
    s.mean_count = count_sum / static_cast<double>(counted);
    if (cfg.kind == "count2") s.mean_residual = residual_sum / static_cast<double>(counted);
  }
  return out;
}

void emit(const std::vector<TrialRecord>& records, const std::string& format, std::ostream& os) {
  if (format == "tsv") {
    os << "trial\tp\tlambda\tK\tL\tM\tcount\tmethod\taux1\taux2\telapsed_us\n";
    for (const auto& r : records)
      os << r.trial << '\t' << r.p << '\t' << r.lambda << '\t' << r.K << '\t' << r.L << '\t'
         << r.M << '\t' << r.count << '\t' << r.method << '\t' << r.aux1 << '\t' << r.aux2
         << '\t' << r.elapsed_us << '\n';
  } else if (format == "jsonl") {
    for (const auto& r : records)
      os << "{\"trial\":" << r.trial << ",\"p\":" << r.p << ",\"lambda\":" << r.lambda
         << ",\"K\":" << r.K << ",\"L\":" << r.L << ",\"M\":" << r.M << ",\"count\":" << r.count
         << ",\"method\":\"" << r.method << "\",\"aux1\":" << r.aux1 << ",\"aux2\":" << r.aux2
         << ",\"elapsed_us\":" << r.elapsed_us << "}\n";
  } else {
    throw ConfigError("emit: format must be tsv or jsonl");
  }
}

std::string summary_text(const Summary& s) {
  std::ostringstream os;
  os << "trials=" << s.trials << " errored=" << s.errored << " max_count=" << s.max_count
     << " mean_count=" << s.mean_count;
  if (s.max_count_small_m >= 0) os << " max_count[M^4<p]=" << s.max_count_small_m;
  os << " max|residual|=" << s.max_abs_residual << " mean_residual=" << s.mean_residual << "\n";
  for (const auto& line : s.error_lines) os << "  " << line << "\n";
  return os.str();
}

}  // namespace hypell::experiment
