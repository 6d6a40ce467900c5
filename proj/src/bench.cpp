// SPDX-License-Identifier: Apache-2.0
#include "udep/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "udep/codec.hpp"
#include "udep/errors.hpp"
#include "udep/linalg.hpp"
#include "udep/metrics.hpp"
#include "udep/quantize.hpp"

namespace udep {

namespace {

constexpr double kPi = std::numbers::pi;

int method_id(const std::string& m) {
  if (m == "dep") return 0;
  if (m == "givens") return 1;
  if (m == "naive") return 2;
  if (m == "naive-proj") return 3;
  throw PreconditionError("unknown method: " + m);
}

// Per-(trial, method, sweep) noise stream, independent of execution order.
Rng noise_rng(std::uint64_t trial_seed, int method, std::size_t sweep_idx) {
  const std::uint64_t s = trial_seed +
                          static_cast<std::uint64_t>(method) * 0x9E3779B97F4A7C15ULL +
                          (static_cast<std::uint64_t>(sweep_idx) + 1) * 0xBF58476D1CE4E5B9ULL;
  return Rng(mix64(s));
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return mix64(seed ^ static_cast<std::uint64_t>(trial));
}

// A coordinate group with its own quantizer range; AWGN acts on the
// concatenation of all groups of a payload.
struct Seg {
  std::vector<double> values;
  double lo = -1.0;
  double hi = 1.0;
};

std::vector<Seg> encode_by_method(const std::string& method, const CMat& u, double overrange) {
  const std::size_t n = u.rows();
  std::vector<Seg> segs;
  if (method == "dep") {
    const double half = coefficient_bound(n) / overrange;
    segs.push_back({encode(u, Variant::full()).coords, -half, half});
  } else if (method == "givens") {
    const GivensParams p = givens_encode(u);
    segs.push_back({p.amplitudes, 0.0, 1.0});
    std::vector<double> phases = p.rotation_phases;
    phases.insert(phases.end(), p.diagonal_phases.begin(), p.diagonal_phases.end());
    segs.push_back({std::move(phases), -kPi, kPi});
  } else {
    segs.push_back({naive_encode(u), -1.0, 1.0});
  }
  return segs;
}

CMat decode_by_method(const std::string& method, std::size_t n, const std::vector<Seg>& segs,
                      bool force_project) {
  if (method == "dep") {
    CoordVector alpha;
    alpha.n = n;
    alpha.variant = Variant::full();
    alpha.coords = segs[0].values;
    return decode(alpha);
  }
  if (method == "givens") {
    GivensParams p;
    p.n = n;
    const std::size_t pairs = n * (n - 1) / 2;
    p.amplitudes = segs[0].values;
    p.rotation_phases.assign(segs[1].values.begin(), segs[1].values.begin() + pairs);
    p.diagonal_phases.assign(segs[1].values.begin() + pairs, segs[1].values.end());
    return givens_decode(p);
  }
  return naive_decode(n, segs[0].values, force_project || method == "naive-proj");
}

bool unitary_output(const std::string& method) { return method != "naive"; }

// AWGN over the concatenation of all segments at the given capacity. The
// per-dimension SNR follows log2(1+SNR) with a unit reference signal power,
// so every method sees the same absolute noise floor per channel use.
void channel_awgn(std::vector<Seg>& segs, double capacity, Rng& rng) {
  const double snr = std::exp2(capacity) - 1.0;
  const double sigma = std::sqrt(1.0 / snr);
  for (Seg& s : segs)
    for (double& v : s.values) v += sigma * rng.gaussian();
}

// Per-segment midrise quantization at the given bit depth.
void channel_quantize(std::vector<Seg>& segs, int bits) {
  for (Seg& s : segs) {
    const QuantizerSpec spec{bits, s.lo, s.hi};
    s.values = dequantize(quantize(s.values, spec), spec);
  }
}

void check_common(const BenchConfig& cfg) {
  if (cfg.trials < 1) throw PreconditionError("bench: trials must be >= 1");
  if (cfg.sweep.empty()) throw PreconditionError("bench: empty sweep list");
  if (cfg.methods.empty()) throw PreconditionError("bench: empty method list");
  for (const std::string& m : cfg.methods) (void)method_id(m);
  for (double s : cfg.sweep)
    if (!(s > 0.0)) throw PreconditionError("bench: sweep values must be positive");
  if (!(cfg.overrange >= 1.0)) throw PreconditionError("bench: overrange must be >= 1");
}

int sweep_bits(double s) {
  const int b = static_cast<int>(s);
  if (b < 1 || b > 16 || static_cast<double>(b) != s)
    throw PreconditionError("bench: bit depths must be integers in [1, 16]");
  return b;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

CMat rayleigh(std::size_t m, std::size_t n, Rng& rng) {
  if (m < 1 || n < 1) throw PreconditionError("rayleigh: dimensions must be >= 1");
  CMat h(m, n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = cplx(rng.gaussian(), rng.gaussian()) * inv_sqrt2;
  return h;
}

CMat sample_symmetric_unitary(std::size_t n, Rng& rng) {
  const CMat v = haar_unitary(n, rng);
  return v * v.transpose();
}

CMat fris_optimal_theta(const CMat& h1, const CMat& h2) {
  if (h1.cols() != h2.rows()) throw ShapeError("fris_optimal_theta: inner dims mismatch");
  const std::size_t n = h1.cols();
  const SvdResult s1 = svd(h1);
  const SvdResult s2 = svd(h2);
  CMat v1 = s1.right;
  if (v1.cols() < n) v1 = complete_unitary(v1);
  CMat u2 = s2.left;
  if (u2.cols() < n) u2 = complete_unitary(u2);
  return v1 * u2.adjoint();
}

std::vector<TrialRecord> run_awgn_sweep(const BenchConfig& cfg) {
  check_common(cfg);
  std::vector<TrialRecord> out;
  for (const std::string& method : cfg.methods) {
    const int mid = method_id(method);
    for (std::size_t si = 0; si < cfg.sweep.size(); ++si) {
      const double capacity = cfg.sweep[si];
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const std::uint64_t ts = trial_seed(cfg.seed, t);
        Rng draw(ts);
        const CMat u = haar_unitary(cfg.n, draw);
        std::vector<Seg> segs = encode_by_method(method, u, cfg.overrange);
        if (!cfg.noiseless) {
          Rng noise = noise_rng(ts, mid, si);
          const double c = (mid >= 2) ? capacity / 2.0 : capacity;
          channel_awgn(segs, c, noise);
        }
        const CMat uhat = decode_by_method(method, cfg.n, segs, false);
        TrialRecord rec{method, capacity, t, mse(u, uhat), {}, {}};
        if (unitary_output(method)) rec.fidelity = fidelity(u, uhat);
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<TrialRecord> run_quant_sweep(const BenchConfig& cfg) {
  check_common(cfg);
  std::vector<TrialRecord> out;
  for (const std::string& method : cfg.methods) {
    for (std::size_t si = 0; si < cfg.sweep.size(); ++si) {
      const int bits = sweep_bits(cfg.sweep[si]);
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        Rng draw(trial_seed(cfg.seed, t));
        const CMat u = haar_unitary(cfg.n, draw);
        std::vector<Seg> segs = encode_by_method(method, u, cfg.overrange);
        if (!cfg.noiseless) channel_quantize(segs, bits);
        const CMat uhat = decode_by_method(method, cfg.n, segs, false);
        TrialRecord rec{method, cfg.sweep[si], t, mse(u, uhat), {}, {}};
        if (unitary_output(method)) rec.fidelity = fidelity(u, uhat);
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<TrialRecord> run_csi(const BenchConfig& cfg) {
  check_common(cfg);
  if (cfg.m < cfg.n) throw PreconditionError("csi: need M >= N");
  const double power = std::pow(10.0, cfg.snr_db / 10.0);
  std::vector<TrialRecord> out;
  for (const std::string& method : cfg.methods) {
    const int mid = method_id(method);
    for (std::size_t si = 0; si < cfg.sweep.size(); ++si) {
      const double capacity = cfg.sweep[si];
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const std::uint64_t ts = trial_seed(cfg.seed, t);
        Rng draw(ts);
        const CMat h = rayleigh(cfg.m, cfg.n, draw);
        const SvdResult s = svd(h);
        std::vector<double> gains(cfg.n);
        for (std::size_t i = 0; i < cfg.n; ++i)
          gains[i] = std::max(s.singulars[i] * s.singulars[i], 1e-300);
        const PowerAllocation pa = waterfilling(gains, power);
        double cap = 0.0;
        for (std::size_t i = 0; i < cfg.n; ++i)
          cap += std::log2(1.0 + gains[i] * pa.powers[i]);

        std::vector<Seg> segs = encode_by_method(method, s.right, cfg.overrange);
        std::vector<double> ratios(cfg.n);
        for (std::size_t i = 0; i < cfg.n; ++i) ratios[i] = pa.powers[i] / power;
        segs.push_back({std::move(ratios), 0.0, 1.0});
        if (!cfg.noiseless) {
          Rng noise = noise_rng(ts, mid, si);
          const double c = (mid >= 2) ? capacity / 2.0 : capacity;
          channel_awgn(segs, c, noise);
        }
        std::vector<double> rhat = std::move(segs.back().values);
        segs.pop_back();
        const CMat vhat = decode_by_method(method, cfg.n, segs, false);

        double rsum = 0.0;
        for (double& r : rhat) {
          r = std::min(1.0, std::max(0.0, r));
          rsum += r;
        }
        PowerAllocation phat;
        phat.total = power;
        phat.powers.resize(cfg.n);
        for (std::size_t i = 0; i < cfg.n; ++i)
          phat.powers[i] = rsum > 0.0 ? rhat[i] * power / rsum
                                      : power / static_cast<double>(cfg.n);

        const double rate = stream_sinr_rate(h, s.left, vhat, phat);
        TrialRecord rec{method, capacity, t, mse(s.right, vhat), {}, rate / cap};
        if (unitary_output(method)) rec.fidelity = fidelity(s.right, vhat);
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<TrialRecord> run_fris(const BenchConfig& cfg) {
  check_common(cfg);
  const double rho = std::pow(10.0, cfg.snr_db / 10.0);
  std::vector<TrialRecord> out;
  for (const std::string& method : cfg.methods) {
    const int mid = method_id(method);
    for (std::size_t si = 0; si < cfg.sweep.size(); ++si) {
      const double capacity = cfg.sweep[si];
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const std::uint64_t ts = trial_seed(cfg.seed, t);
        Rng draw(ts);
        const CMat h1 = rayleigh(cfg.m, cfg.n, draw);
        const CMat h2 = rayleigh(cfg.n, cfg.k, draw);
        const CMat theta = fris_optimal_theta(h1, h2);
        const double cstar = logdet_capacity(h1 * theta * h2, rho);

        std::vector<Seg> segs = encode_by_method(method, theta, cfg.overrange);
        if (!cfg.noiseless) {
          Rng noise = noise_rng(ts, mid, si);
          const double c = (mid >= 2) ? capacity / 2.0 : capacity;
          channel_awgn(segs, c, noise);
        }
        // The reflection matrix is physically unitary: naive reconstructions
        // are always projected back onto the group.
        const CMat theta_hat = decode_by_method(method, cfg.n, segs, true);
        const double chat = logdet_capacity(h1 * theta_hat * h2, rho);
        TrialRecord rec{method, capacity, t, mse(theta, theta_hat),
                        fidelity(theta, theta_hat), chat / cstar};
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<TrialRecord> run_blockdiag(const BenchConfig& cfg) {
  check_common(cfg);
  if (cfg.blocks.empty()) throw PreconditionError("blockdiag: block list required");
  std::vector<TrialRecord> out;
  for (const std::string& method : cfg.methods) {
    const int mid = method_id(method);
    for (std::size_t si = 0; si < cfg.sweep.size(); ++si) {
      const double capacity = cfg.sweep[si];
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const std::uint64_t ts = trial_seed(cfg.seed, t);
        Rng draw(ts);
        std::vector<CMat> targets;
        for (std::size_t b : cfg.blocks) targets.push_back(haar_unitary(b, draw));

        // Per-block payloads share one channel realization; for dep this is
        // exactly the BlockDiagonal-variant codec.
        std::vector<Seg> segs;
        std::vector<std::size_t> seg_counts;
        for (const CMat& blk : targets) {
          std::vector<Seg> s = encode_by_method(method, blk, cfg.overrange);
          seg_counts.push_back(s.size());
          for (Seg& x : s) segs.push_back(std::move(x));
        }
        if (!cfg.noiseless) {
          Rng noise = noise_rng(ts, mid, si);
          const double c = (mid >= 2) ? capacity / 2.0 : capacity;
          channel_awgn(segs, c, noise);
        }
        double mse_sum = 0.0;
        double fid_sum = 0.0;
        bool all_unitary = unitary_output(method);
        std::size_t pos = 0;
        for (std::size_t bi = 0; bi < targets.size(); ++bi) {
          std::vector<Seg> sub(segs.begin() + pos, segs.begin() + pos + seg_counts[bi]);
          pos += seg_counts[bi];
          const CMat bhat = decode_by_method(method, cfg.blocks[bi], sub, false);
          mse_sum += mse(targets[bi], bhat);
          if (all_unitary) fid_sum += fidelity(targets[bi], bhat);
        }
        const double nb = static_cast<double>(targets.size());
        TrialRecord rec{method, capacity, t, mse_sum / nb, {}, {}};
        if (all_unitary) rec.fidelity = fid_sum / nb;
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<TrialRecord> run_bench(const BenchConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::AwgnSweep:
      return run_awgn_sweep(cfg);
    case Experiment::QuantSweep:
      return run_quant_sweep(cfg);
    case Experiment::Csi:
      return run_csi(cfg);
    case Experiment::Fris:
      return run_fris(cfg);
    case Experiment::BlockDiag:
      return run_blockdiag(cfg);
  }
  throw PreconditionError("run_bench: invalid experiment");
}

std::size_t blockdiag_payload_dims(const std::vector<std::size_t>& blocks, bool naive) {
  std::size_t total = 0;
  for (std::size_t b : blocks) total += b * b;
  return naive ? 2 * total : total;
}

std::string records_to_csv(const std::string& experiment, const std::vector<TrialRecord>& rows) {
  std::ostringstream os;
  os << "experiment,method,sweep,trial,mse,fidelity,ratio\n";
  for (const TrialRecord& r : rows) {
    os << experiment << ',' << r.method << ',' << fmt_double(r.sweep) << ',' << r.trial << ','
       << fmt_double(r.mse) << ',';
    if (r.fidelity) os << fmt_double(*r.fidelity);
    os << ',';
    if (r.ratio) os << fmt_double(*r.ratio);
    os << '\n';
  }
  return os.str();
}

namespace {

struct Acc {
  std::size_t count = 0;
  double sum = 0.0, sq = 0.0;
  void add(double v) {
    ++count;
    sum += v;
    sq += v * v;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double stddev() const {
    if (count < 2) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, sq / static_cast<double>(count) - m * m));
  }
};

}  // namespace

std::string records_to_aggregate_csv(const std::string& experiment,
                                     const std::vector<TrialRecord>& rows) {
  struct Key {
    std::string method;
    double sweep;
  };
  std::vector<Key> keys;
  std::vector<Acc> mses, fids, ratios;
  for (const TrialRecord& r : rows) {
    std::size_t idx = keys.size();
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i].method == r.method && keys[i].sweep == r.sweep) {
        idx = i;
        break;
      }
    if (idx == keys.size()) {
      keys.push_back({r.method, r.sweep});
      mses.emplace_back();
      fids.emplace_back();
      ratios.emplace_back();
    }
    mses[idx].add(r.mse);
    if (r.fidelity) fids[idx].add(*r.fidelity);
    if (r.ratio) ratios[idx].add(*r.ratio);
  }
  std::ostringstream os;
  os << "experiment,method,sweep,trials,mean_mse,std_mse,mean_fidelity,std_fidelity,"
        "mean_ratio,std_ratio\n";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    os << experiment << ',' << keys[i].method << ',' << fmt_double(keys[i].sweep) << ','
       << mses[i].count << ',' << fmt_double(mses[i].mean()) << ','
       << fmt_double(mses[i].stddev()) << ',';
    if (fids[i].count) os << fmt_double(fids[i].mean()) << ',' << fmt_double(fids[i].stddev());
    else os << ',';
    os << ',';
    if (ratios[i].count)
      os << fmt_double(ratios[i].mean()) << ',' << fmt_double(ratios[i].stddev());
    else os << ',';
    os << '\n';
  }
  return os.str();
}

}  // namespace udep
