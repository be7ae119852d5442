#include "nilsep/growth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "nilsep/ball.hpp"
#include "nilsep/errors.hpp"
#include "nilsep/heisenberg.hpp"
#include "nilsep/modular.hpp"
#include "nilsep/witness.hpp"

namespace nilsep {

namespace {

using Pivot = GroupContext::Pivot;

// RF family: Gamma / (N_I * Gamma(p)), p prime, the quotients the separation
// argument produces. Index sets I whose pivot pattern is a two-sided ideal of the pattern algebra;
// then N_I = <xi_i : i in I> is normal and g lies in N_I * Gamma(m) iff every
// pivot entry of g outside I vanishes mod m.
std::vector<std::vector<bool>> coordinate_ideals(const GroupContext& ctx) {
  const auto& piv = ctx.pivots();
  const std::size_t h = piv.size();
  if (h > 20) throw Unsupported("too many generators for the coordinate-ideal family");
  std::vector<std::vector<bool>> out;
  for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << h); ++mask) {
    std::set<Pivot> in;
    for (std::size_t i = 0; i < h; ++i)
      if (mask >> i & 1) in.insert(piv[i]);
    bool ok = true;
    for (const auto& a : in) {
      for (const auto& q : piv) {
        if (a.second == q.first && !in.count({a.first, q.second})) ok = false;
        if (q.second == a.first && !in.count({q.first, a.second})) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<bool> s(h);
    for (std::size_t i = 0; i < h; ++i) s[i] = mask >> i & 1;
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t count_true(const std::vector<bool>& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

Int rf_value(const GroupContext& ctx, const std::vector<std::vector<bool>>& ideals, const UTElement& g) {
  const auto& piv = ctx.pivots();
  Int best = 0;
  for (const auto& ideal : ideals) {
    Int d = 0;
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (!ideal[i]) d = gcd(d, g.at(piv[i].first, piv[i].second));
    if (d == 0) continue;
    const Int v = ipow(*smallest_prime_non_divisor(d), static_cast<unsigned>(piv.size() - count_true(ideal)));
    if (best == 0 || v < best) best = v;
  }
  if (best == 0) throw ContractViolation("restricted D: element is trivial");
  return best;
}

// Largest ball within the budget, at most n_max.
Ball bounded_ball(const GroupContext& ctx, int n_max, std::uint64_t budget, GrowthRun& run) {
  for (int n = n_max; n >= 1; --n) {
    try {
      Ball b = ball_enumerate(ctx, n, budget);
      if (n < n_max) {
        run.partial = true;
        run.note = "ball budget reached; stopped at radius " + std::to_string(n);
      }
      return b;
    } catch (const BudgetExceeded&) {
    }
  }
  throw BudgetExceeded("budget too small for the 1-ball");
}

std::vector<GrowthSample> prefix_samples(const std::vector<Int>& best_at, const std::vector<std::uint64_t>& count_at,
                                         int radius) {
  std::vector<GrowthSample> out;
  Int running = 0;
  std::uint64_t seen = 0;
  for (int n = 1; n <= radius; ++n) {
    running = std::max(running, best_at[n]);
    seen += count_at[n];
    out.push_back({n, running, seen, true});
  }
  return out;
}

// Raw oracle for D: scans primes m upward for every ideal and checks survival in the
// explicit quotient by closing N_I's generators in Gamma / Gamma(m).
Int rf_value_oracle(const GroupContext& ctx, const std::vector<std::vector<bool>>& ideals, const UTElement& g,
                    std::map<std::pair<std::size_t, std::uint64_t>, ModSet>& cache, std::uint64_t budget) {
  const std::size_t h = ctx.hirsch();
  Int best = 0;
  for (std::size_t k = 0; k < ideals.size(); ++k) {
    const unsigned corank = static_cast<unsigned>(h - count_true(ideals[k]));
    for (std::uint64_t m = 2;; m = next_prime(m)) {
      const Int order = ipow(m, corank);
      if (best != 0 && order >= best) break;
      if (ipow(m, static_cast<unsigned>(h)) > budget) break;
      const ModQuotient q(ctx, static_cast<std::int64_t>(m));
      auto it = cache.find({k, m});
      if (it == cache.end()) {
        std::vector<ModElement> gens;
        for (std::size_t i = 0; i < h; ++i)
          if (ideals[k][i]) gens.push_back(q.reduce(ctx.generator(i)));
        it = cache.emplace(std::make_pair(k, m), q.closure(gens, budget)).first;
      }
      if (!it->second.count(q.reduce(g))) {
        best = order;
        break;
      }
    }
  }
  if (best == 0) throw BudgetExceeded("restricted D oracle: no separating quotient within budget");
  return best;
}

// ---- conjugacy ----

using Vec = std::vector<long long>;

struct HPoint {
  Vec key;  // x then y
  long long z;
  int len;
};

long long snd_ll(long long d) { return static_cast<long long>(*smallest_non_divisor(Int(static_cast<long>(d)))); }

// Least m with gcd(tau, m) not dividing t (tau = 0: least m not dividing t).
long long same_key_modulus(long long tau, long long t) {
  if (tau == 0) return snd_ll(t);
  long long best = 0;
  for (const auto& [p, e] : factor(Int(static_cast<long>(tau)))) {
    const unsigned v = valuation(Int(static_cast<long>(t)), p);
    if (v >= e) continue;
    long long q = 1;
    for (unsigned i = 0; i <= v; ++i) q *= static_cast<long long>(p);
    if (best == 0 || q < best) best = q;
  }
  return best;
}

struct ConjTally {
  long long max_modulus = 0;
  std::uint64_t nonconjugate_pairs = 0;
};

ConjTally heisenberg_conj(const std::vector<HPoint>& pts) {
  std::map<Vec, std::vector<long long>> groups;
  for (const auto& p : pts) groups[p.key].push_back(p.z);
  for (auto& [key, zs] : groups) std::sort(zs.begin(), zs.end());

  ConjTally out;
  const std::uint64_t n = pts.size();
  std::uint64_t conjugate_pairs = 0;
  std::vector<long long> taus;
  for (const auto& [key, zs] : groups) {
    long long tau = 0;
    for (const auto v : key) tau = std::gcd(tau, v);
    taus.push_back(tau);
    if (tau != 0) {
      std::map<long long, std::uint64_t> classes;
      for (const auto z : zs) ++classes[((z % tau) + tau) % tau];
      for (const auto& [r, c] : classes) conjugate_pairs += c * (c - 1) / 2;
    }
    std::set<long long> diffs;
    for (std::size_t i = 0; i < zs.size(); ++i)
      for (std::size_t j = i + 1; j < zs.size(); ++j) diffs.insert(zs[j] - zs[i]);
    for (const auto t : diffs) {
      if (tau != 0 && t % tau == 0) continue;
      out.max_modulus = std::max(out.max_modulus, same_key_modulus(tau, t));
    }
  }
  out.nonconjugate_pairs = n * (n - 1) / 2 - conjugate_pairs;

  // Different abelianization images: separated mod m0 = snd(gcd of differences);
  // below m0 the images agree and the z-offset decides.
  std::vector<const std::vector<long long>*> zsets;
  std::vector<const Vec*> keys;
  for (const auto& [key, zs] : groups) {
    keys.push_back(&key);
    zsets.push_back(&zs);
  }
  for (std::size_t a = 0; a < keys.size(); ++a) {
    for (std::size_t b = a + 1; b < keys.size(); ++b) {
      long long d = 0;
      for (std::size_t i = 0; i < keys[a]->size(); ++i) d = std::gcd(d, (*keys[a])[i] - (*keys[b])[i]);
      const long long m0 = snd_ll(d);
      if (m0 <= out.max_modulus) continue;
      for (long long m = m0; m > out.max_modulus && m >= 2; --m) {
        long long g = 1;
        for (long long mp = 2; mp < m; ++mp) g = std::lcm(g, std::gcd(taus[a], mp));
        std::set<long long> residues;
        for (const auto z : *zsets[a]) residues.insert(((z % g) + g) % g);
        bool hit = false;
        for (const auto z : *zsets[b])
          if (residues.count(((z % g) + g) % g)) {
            hit = true;
            break;
          }
        if (hit) {
          out.max_modulus = m;
          break;
        }
      }
    }
  }
  return out;
}

ConjTally abelian_conj(const std::vector<std::vector<long long>>& pts) {
  ConjTally out;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      long long d = 0;
      for (std::size_t i = 0; i < pts[a].size(); ++i) d = std::gcd(d, pts[a][i] - pts[b][i]);
      out.max_modulus = std::max(out.max_modulus, snd_ll(d));
      ++out.nonconjugate_pairs;
    }
  return out;
}

long long to_ll(const Int& v) {
  if (!v.fits_slong_p()) throw Unsupported("coordinate exceeds 64 bits");
  return v.get_si();
}

// Exact pair scan: conjugacy in Gamma by the conjugator search, separation by
// orbits in Gamma / Gamma(m) for ascending m.
class OrbitSeparator {
 public:
  OrbitSeparator(const GroupContext& ctx, std::uint64_t budget) : ctx_(ctx), budget_(budget) {}

  std::uint64_t least_modulus(const UTElement& g, const UTElement& h) {
    for (std::uint64_t m = 2;; ++m) {
      if (ipow(m, static_cast<unsigned>(ctx_.hirsch())) > budget_)
        throw BudgetExceeded("separating modulus beyond the orbit budget");
      auto qit = quotients_.find(m);
      if (qit == quotients_.end()) qit = quotients_.emplace(m, ModQuotient(ctx_, static_cast<std::int64_t>(m))).first;
      const ModQuotient& q = qit->second;
      const ModElement gm = q.reduce(g), hm = q.reduce(h);
      auto& cache = classes_[m];
      auto it = cache.find(gm);
      if (it == cache.end()) it = cache.emplace(gm, q.conjugacy_class(gm, budget_)).first;
      if (!it->second.count(hm)) return m;
    }
  }

 private:
  const GroupContext& ctx_;
  std::uint64_t budget_;
  std::map<std::uint64_t, ModQuotient> quotients_;
  std::map<std::uint64_t, std::unordered_map<ModElement, ModSet, ModElementHash>> classes_;
};

}  // namespace

Int restricted_rf_value(const GroupContext& ctx, const UTElement& g) {
  return rf_value(ctx, coordinate_ideals(ctx), g);
}

GrowthRun measure_rf_growth(const GroupContext& ctx, int n_max, const GrowthOptions& opts) {
  if (n_max < 1) throw ContractViolation("radius must be positive");
  if (opts.raw_oracle && n_max > 3) throw ContractViolation("raw oracle mode is limited to radius 3");
  GrowthRun run;
  const Ball ball = bounded_ball(ctx, n_max, opts.budget, run);
  const int radius = ball.radius();
  const auto ideals = coordinate_ideals(ctx);
  std::map<std::pair<std::size_t, std::uint64_t>, ModSet> cache;

  std::vector<Int> best_at(radius + 1, 0);
  std::vector<std::uint64_t> count_at(radius + 1, 0);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto& g = ball.elements()[i];
    if (g.is_identity()) continue;
    const int l = ball.lengths()[i];
    const Int v = opts.raw_oracle ? rf_value_oracle(ctx, ideals, g, cache, opts.budget) : rf_value(ctx, ideals, g);
    best_at[l] = std::max(best_at[l], v);
    ++count_at[l];
  }
  run.samples = prefix_samples(best_at, count_at, radius);
  return run;
}

GrowthRun measure_conj_growth(const GroupContext& ctx, int n_max, const GrowthOptions& opts) {
  if (n_max < 1) throw ContractViolation("radius must be positive");
  if (opts.raw_oracle && n_max > 3) throw ContractViolation("raw oracle mode is limited to radius 3");
  GrowthRun run;
  const Ball ball = bounded_ball(ctx, n_max, opts.budget, run);
  const int radius = ball.radius();
  const auto h = static_cast<unsigned>(ctx.hirsch());

  const bool closed_form = !opts.raw_oracle && (ctx.is_abelian() || ctx.family() == Family::Heisenberg);
  if (closed_form) {
    for (int n = 1; n <= radius; ++n) {
      ConjTally tally;
      if (ctx.is_abelian()) {
        std::vector<std::vector<long long>> pts;
        for (const auto& g : ball.within(n)) {
          std::vector<long long> c;
          for (const auto& v : ctx.coordinates(g)) c.push_back(to_ll(v));
          pts.push_back(std::move(c));
        }
        tally = abelian_conj(pts);
      } else {
        std::vector<HPoint> pts;
        for (const auto& g : ball.within(n)) {
          const auto e = h_from_ut(g);
          HPoint p;
          for (const auto& v : e.x) p.key.push_back(to_ll(v));
          for (const auto& v : e.y) p.key.push_back(to_ll(v));
          p.z = to_ll(e.z);
          pts.push_back(std::move(p));
        }
        tally = heisenberg_conj(pts);
      }
      const Int value = tally.max_modulus == 0 ? Int(0) : ipow(static_cast<std::uint64_t>(tally.max_modulus), h);
      run.samples.push_back({n, value, tally.nonconjugate_pairs, true});
    }
    return run;
  }

  // Pair scan with exact conjugacy and orbit separation.
  OrbitSeparator sep(ctx, opts.budget);
  std::vector<Int> best_at(radius + 1, 0);
  std::vector<std::uint64_t> count_at(radius + 1, 0);
  std::uint64_t work = 0;
  const auto& el = ball.elements();
  const auto& len = ball.lengths();
  int current = 0;
  try {
    for (std::size_t b = 0; b < el.size(); ++b) {
      // BFS order: once element b is reached, every pair of radius < len[b] is done.
      current = len[b];
      for (std::size_t a = 0; a < b; ++a) {
        if (++work > opts.budget) throw BudgetExceeded("pair budget reached");
        if (is_conjugate(ctx, el[a], el[b])) continue;
        const Int v = ipow(sep.least_modulus(el[a], el[b]), h);
        best_at[len[b]] = std::max(best_at[len[b]], v);
        ++count_at[len[b]];
      }
    }
  } catch (const BudgetExceeded& e) {
    run.partial = true;
    run.note = std::string(e.what()) + "; stopped at radius " + std::to_string(current - 1);
    run.samples = prefix_samples(best_at, count_at, std::max(0, current - 1));
    return run;
  }
  run.samples = prefix_samples(best_at, count_at, radius);
  return run;
}

std::string to_string(FitModel m) { return m == FitModel::PowerLaw ? "power-law" : "poly-log"; }

FitModel fit_model_from_string(const std::string& s) {
  if (s == "power-law") return FitModel::PowerLaw;
  if (s == "poly-log") return FitModel::PolyLog;
  throw ParseError("unknown fit model '" + s + "'");
}

FitReport fit_exponent(const std::vector<GrowthSample>& samples, FitModel model, int min_n) {
  std::vector<double> xs, ys;
  FitReport out;
  out.model = model;
  for (const auto& s : samples) {
    if (s.n < std::max(min_n, model == FitModel::PolyLog ? 2 : 1)) continue;
    if (s.value <= 0) throw ContractViolation("fit_exponent: values must be positive");
    const double ln = std::log(static_cast<double>(s.n));
    xs.push_back(model == FitModel::PowerLaw ? ln : std::log(ln));
    ys.push_back(std::log(s.value.get_d()));
    if (out.samples_used == 0) out.n_min = s.n;
    out.n_max = s.n;
    ++out.samples_used;
  }
  if (out.samples_used < 4) throw ContractViolation("fit_exponent: needs at least 4 samples");
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw ContractViolation("fit_exponent: degenerate radii");
  out.exponent = sxy / sxx;
  const double c = my - out.exponent * mx;
  out.constant = std::exp(c);
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (c + out.exponent * xs[i]);
    ss += r * r;
  }
  out.residual = std::sqrt(ss / k);
  return out;
}

std::string samples_to_csv(const std::vector<GrowthSample>& samples) {
  std::ostringstream os;
  os << "n,value,witness_count,restricted\n";
  for (const auto& s : samples) os << s.n << ',' << s.value.get_str() << ',' << s.witness_count << ',' << (s.restricted ? 1 : 0) << '\n';
  return os.str();
}

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
  f << text;
  if (!f.flush()) throw std::runtime_error("write failed: " + p.string());
}

}  // namespace

ReportFiles emit_report(const std::vector<GrowthSample>& samples, const std::vector<FitReport>& fits,
                        const std::string& dir, const std::string& stem, const std::string& title) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());

  ReportFiles files{(fs::path(dir) / (stem + ".csv")).string(), (fs::path(dir) / (stem + ".json")).string(),
                    (fs::path(dir) / (stem + ".gp")).string()};
  write_file(files.csv, samples_to_csv(samples));

  nlohmann::ordered_json j;
  j["title"] = title;
  j["samples"] = nlohmann::ordered_json::array();
  for (const auto& s : samples)
    j["samples"].push_back({{"n", s.n}, {"value", s.value.get_str()}, {"witness_count", s.witness_count},
                            {"restricted", s.restricted}});
  j["fits"] = nlohmann::ordered_json::array();
  for (const auto& f : fits)
    j["fits"].push_back({{"model", to_string(f.model)},
                         {"exponent", fixed(f.exponent)},
                         {"constant", fixed(f.constant)},
                         {"residual", fixed(f.residual)},
                         {"range", {f.n_min, f.n_max}},
                         {"samples", f.samples_used}});
  write_file(files.json, j.dump(2) + "\n");

  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set key left top\n"
     << "set xlabel 'n'\n"
     << "set ylabel 'value'\n"
     << "set logscale y\n"
     << "set title '" << (title.empty() ? stem : title) << "'\n";
  std::string extra;
  for (const auto& f : fits) {
    const std::string x = f.model == FitModel::PowerLaw ? "x" : "log(x)";
    extra += ", " + fixed(f.constant) + "*(" + x + ")**" + fixed(f.exponent) + " title '" + to_string(f.model) +
             " fit e=" + fixed(f.exponent) + "'";
  }
  gp << "plot '" << stem << ".csv' every ::1 using 1:2 with linespoints title 'measured'" << extra << "\n";
  write_file(files.gnuplot, gp.str());
  return files;
}

}  // namespace nilsep
