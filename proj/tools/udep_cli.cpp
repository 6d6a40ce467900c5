// SPDX-License-Identifier: Apache-2.0
//
// udep: encode/decode unitary matrices to bounded coordinate payloads,
// generate test matrices, validate unitarity, and run Monte Carlo benchmarks.
//
// Exit codes: 0 success, 2 parse/format/usage error, 3 non-unitary input,
// 4 structure/variant mismatch.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udep/bench.hpp"
#include "udep/codec.hpp"
#include "udep/errors.hpp"
#include "udep/linalg.hpp"
#include "udep/matrix_io.hpp"
#include "udep/payload.hpp"
#include "udep/quantize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNonUnitary = 3;
constexpr int kExitStructure = 4;

udep::Variant parse_variant(const std::string& name, const std::string& blocks_csv) {
  if (name == "full") return udep::Variant::full();
  if (name == "su") return udep::Variant::special_unitary();
  if (name == "symmetric") return udep::Variant::symmetric();
  if (name == "rotation") return udep::Variant::rotation();
  if (name == "blocks") {
    if (blocks_csv.empty())
      throw udep::PreconditionError("variant 'blocks' requires --blocks sizes");
    std::vector<std::size_t> sizes;
    std::stringstream ss(blocks_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const long v = std::stol(tok);
      if (v < 1) throw udep::PreconditionError("block sizes must be >= 1");
      sizes.push_back(static_cast<std::size_t>(v));
    }
    return udep::Variant::block_diagonal(std::move(sizes));
  }
  throw udep::PreconditionError("unknown variant: " + name);
}

std::vector<double> parse_sweep(const std::string& s) {
  std::vector<double> out;
  const auto c1 = s.find(':');
  if (c1 == std::string::npos) {
    out.push_back(std::stod(s));
    return out;
  }
  const auto c2 = s.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw udep::PreconditionError("sweep must be a single value or a:b:step");
  const double a = std::stod(s.substr(0, c1));
  const double b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
  const double step = std::stod(s.substr(c2 + 1));
  if (!(step > 0.0) || b < a) throw udep::PreconditionError("invalid sweep range");
  for (double v = a; v <= b + 1e-9; v += step) out.push_back(v);
  return out;
}

std::vector<std::string> parse_methods(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

int cmd_encode(const std::string& in, const std::string& out, const std::string& variant_name,
               const std::string& blocks_csv, std::optional<int> bits, double overrange,
               double tol) {
  const udep::Variant variant = parse_variant(variant_name, blocks_csv);
  udep::CMat u = udep::read_matrix_file(in);
  if (!u.square()) {
    std::cerr << "error: input matrix is not square\n";
    return kExitStructure;
  }
  const std::size_t n = u.rows();
  const double defect = udep::unitarity_defect(u);
  if (defect > tol * static_cast<double>(n)) {
    std::cerr << "error: input is not unitary (defect " << defect << ", tolerance "
              << tol * static_cast<double>(n) << ")\n";
    return kExitNonUnitary;
  }
  // Accepted-but-imprecise inputs (single-precision sources) are snapped onto
  // the group before encoding; the codec itself is strict.
  if (defect > 1e-9 * static_cast<double>(n)) u = udep::nearest_unitary(u);

  udep::EncodedPayload p;
  p.n = n;
  p.variant = variant;
  std::vector<double> coords;
  if (variant.kind == udep::VariantKind::Rotation) {
    const udep::RotationCode code = udep::encode_rotation(u);
    coords = code.coords.coords;
    p.det_sign = code.det_sign;
  } else {
    coords = udep::encode(u, variant).coords;
  }

  double max_abs = 0.0;
  for (double c : coords) max_abs = std::max(max_abs, std::abs(c));

  if (bits) {
    const udep::QuantizerSpec spec =
        udep::overrange_spec(udep::coefficient_bound(n), overrange, *bits);
    p.quantized = true;
    p.segments.push_back({spec, udep::quantize(coords, spec)});
  } else {
    p.raw = std::move(coords);
  }
  udep::write_bytes_file_atomic(out, udep::serialize(p));
  std::printf("dims %zu\nmax |coordinate| %.17g\n", udep::dims(variant, n), max_abs);
  return kExitOk;
}

int cmd_decode(const std::string& in, const std::string& out) {
  const udep::EncodedPayload p = udep::deserialize(udep::read_bytes_file(in));
  udep::CoordVector alpha;
  alpha.n = p.n;
  alpha.variant = p.variant;
  if (p.quantized) {
    for (const auto& seg : p.segments) {
      const std::vector<double> vals = udep::dequantize(seg.indices, seg.spec);
      alpha.coords.insert(alpha.coords.end(), vals.begin(), vals.end());
    }
  } else {
    alpha.coords = p.raw;
  }
  udep::CMat u = p.variant.kind == udep::VariantKind::Rotation
                     ? udep::decode_rotation({alpha, *p.det_sign})
                     : udep::decode(alpha);
  udep::write_matrix_file(out, u);
  std::printf("unitarity defect %.17g\n", udep::unitarity_defect(u));
  return kExitOk;
}

int cmd_rand(std::size_t n, std::uint64_t seed, const std::string& kind,
             const std::string& out) {
  udep::Rng rng(seed);
  udep::CMat u = udep::CMat::identity(n);
  if (kind == "haar")
    u = udep::haar_unitary(n, rng);
  else if (kind == "symmetric")
    u = udep::sample_symmetric_unitary(n, rng);
  else if (kind == "rotation")
    u = udep::haar_rotation(n, rng);
  else
    throw udep::PreconditionError("unknown kind: " + kind);
  udep::write_matrix_file(out, u);
  return kExitOk;
}

int cmd_check(const std::string& in, double tol) {
  const udep::CMat u = udep::read_matrix_file(in);
  if (!u.square()) {
    std::cerr << "error: input matrix is not square\n";
    return kExitStructure;
  }
  const double defect = udep::unitarity_defect(u);
  std::printf("unitarity defect %.17g\n", defect);
  return defect <= tol * static_cast<double>(u.rows()) ? kExitOk : kExitNonUnitary;
}

int cmd_bench(const std::string& experiment, udep::BenchConfig cfg,
              const std::string& capacity, const std::string& bits,
              const std::string& methods_csv, const std::string& blocks_csv,
              const std::string& out, bool aggregate) {
  if (experiment == "awgn")
    cfg.experiment = udep::Experiment::AwgnSweep;
  else if (experiment == "quant")
    cfg.experiment = udep::Experiment::QuantSweep;
  else if (experiment == "csi")
    cfg.experiment = udep::Experiment::Csi;
  else if (experiment == "fris")
    cfg.experiment = udep::Experiment::Fris;
  else if (experiment == "blockdiag")
    cfg.experiment = udep::Experiment::BlockDiag;
  else
    throw udep::PreconditionError("unknown experiment: " + experiment);

  if (!capacity.empty() && !bits.empty())
    throw udep::PreconditionError("--capacity and --bits are mutually exclusive");
  if (cfg.experiment == udep::Experiment::QuantSweep) {
    if (bits.empty()) throw udep::PreconditionError("quant sweep requires --bits");
    cfg.sweep = parse_sweep(bits);
  } else {
    if (capacity.empty()) throw udep::PreconditionError("this experiment requires --capacity");
    cfg.sweep = parse_sweep(capacity);
  }
  if (!methods_csv.empty()) cfg.methods = parse_methods(methods_csv);
  if (!blocks_csv.empty()) {
    cfg.blocks.clear();
    std::stringstream ss(blocks_csv);
    std::string tok;
    std::size_t total = 0;
    while (std::getline(ss, tok, ',')) {
      cfg.blocks.push_back(static_cast<std::size_t>(std::stoul(tok)));
      total += cfg.blocks.back();
    }
    cfg.n = total;
  }

  const std::vector<udep::TrialRecord> rows = udep::run_bench(cfg);
  const std::string csv = aggregate ? udep::records_to_aggregate_csv(experiment, rows)
                                    : udep::records_to_csv(experiment, rows);
  if (out.empty())
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  else
    udep::write_text_file_atomic(out, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"udep: bounded coordinate codec for unitary matrices"};
  app.require_subcommand(1);

  std::string in, out, variant_name = "full", blocks_csv, kind = "haar";
  std::optional<int> bits_opt;
  double overrange = 1.0, tol = 1e-6;
  std::size_t rand_n = 4;
  std::uint64_t rand_seed = 1;

  auto* enc = app.add_subcommand("encode", "Encode a matrix file to a UDEP payload");
  enc->add_option("-i,--in", in, "input matrix file")->required();
  enc->add_option("-o,--out", out, "output payload file")->required();
  enc->add_option("--variant", variant_name, "full|su|symmetric|rotation|blocks");
  enc->add_option("--blocks", blocks_csv, "block sizes for variant=blocks, e.g. 4,4");
  enc->add_option("--bits", bits_opt, "quantize at this bit depth (1-16)");
  enc->add_option("--overrange", overrange, "quantizer overrange factor >= 1");
  enc->add_option("--tol", tol, "unitarity acceptance tolerance (scaled by N)");

  auto* dec = app.add_subcommand("decode", "Decode a UDEP payload to a matrix file");
  dec->add_option("-i,--in", in, "input payload file")->required();
  dec->add_option("-o,--out", out, "output matrix file")->required();

  auto* rnd = app.add_subcommand("rand", "Generate a random matrix file");
  rnd->add_option("--n", rand_n, "matrix size");
  rnd->add_option("--seed", rand_seed, "random seed");
  rnd->add_option("--kind", kind, "haar|symmetric|rotation");
  rnd->add_option("-o,--out", out, "output matrix file")->required();

  auto* chk = app.add_subcommand("check", "Report the unitarity defect of a matrix file");
  chk->add_option("-i,--in", in, "input matrix file")->required();
  chk->add_option("--tol", tol, "acceptance tolerance (scaled by N)");

  udep::BenchConfig cfg;
  std::string experiment, capacity, bits_sweep, methods_csv, bench_blocks, bench_out;
  bool aggregate = false;
  auto* ben = app.add_subcommand("bench", "Run a Monte Carlo benchmark, emit CSV");
  ben->add_option("experiment", experiment, "awgn|quant|csi|fris|blockdiag")->required();
  ben->add_option("--n", cfg.n, "matrix size");
  ben->add_option("--trials", cfg.trials, "Monte Carlo trials");
  ben->add_option("--seed", cfg.seed, "base seed");
  ben->add_option("--methods", methods_csv, "comma list: dep,givens,naive,naive-proj");
  ben->add_option("--capacity", capacity, "bits/use: single value or a:b:step");
  ben->add_option("--bits", bits_sweep, "bit depth sweep: single value or a:b:step");
  ben->add_option("--overrange", cfg.overrange, "quantizer overrange factor >= 1");
  ben->add_option("--snr-db", cfg.snr_db, "link SNR in dB (csi/fris)");
  ben->add_option("--m", cfg.m, "BS antennas (csi/fris)");
  ben->add_option("--k", cfg.k, "UE antennas (fris)");
  ben->add_option("--blocks", bench_blocks, "block sizes, e.g. 4,4 (blockdiag)");
  ben->add_flag("--noiseless", cfg.noiseless, "disable the channel (control run)");
  ben->add_flag("--aggregate", aggregate, "emit mean/std per (method, sweep)");
  ben->add_option("-o,--out", bench_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (enc->parsed())
      return cmd_encode(in, out, variant_name, blocks_csv, bits_opt, overrange, tol);
    if (dec->parsed()) return cmd_decode(in, out);
    if (rnd->parsed()) return cmd_rand(rand_n, rand_seed, kind, out);
    if (chk->parsed()) return cmd_check(in, tol);
    if (ben->parsed())
      return cmd_bench(experiment, cfg, capacity, bits_sweep, methods_csv, bench_blocks,
                       bench_out, aggregate);
  } catch (const udep::FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitParse;
  } catch (const udep::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const udep::StructureError& e) {
    std::cerr << "structure error: " << e.what() << '\n';
    return kExitStructure;
  } catch (const udep::BranchDegeneracyError& e) {
    std::cerr << "structure error: " << e.what() << '\n';
    return kExitStructure;
  } catch (const udep::ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStructure;
  } catch (const udep::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitParse;
}
