// Copyright 2026 The latdft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// latdft command-line front end.
//
//   latdft validate --input M.txt
//   latdft reduce   --input M.txt --epsilon 1/16 [--out DIR]
//   latdft dft      --input M.txt [--out DIR] [--size-guard K]
//   latdft qft-sim  --input M.txt [--out DIR] [--size-guard K] [--dump x1,...,xn]
//   latdft sample   --input config.json [--epsilon p/q] [--shots K] [--seed S] [--out DIR]
//   latdft selftest [--out DIR]
//
// Exit codes: 0 success, 1 usage or I/O error, 2 domain rejection,
// 3 selftest failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "latdft/dft.hpp"
#include "latdft/error.hpp"
#include "latdft/intlat.hpp"
#include "latdft/kernels/kernels.hpp"
#include "latdft/parallel.hpp"
#include "latdft/qcirc.hpp"
#include "latdft/sampler.hpp"
#include "latdft/selftest/acceptance.hpp"
#include "latdft/sysnf.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDomain = 2;
constexpr int kInvariant = 3;

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> shots;
  std::string out = ".";
  std::size_t size_guard = latdft::dft::kDefaultSizeGuard;
  std::string dump;
};

// Raised for bad command-line values and unreadable files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + cfg.out + ": " + ec.message());
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Canonical description of the run plus the bytes of its input.
json summary_base(const RunConfig& cfg, const std::string& input_bytes) {
  json c{{"subcommand", cfg.subcommand},
         {"input", cfg.input.empty() ? "" : fs::absolute(cfg.input).lexically_normal().string()},
         {"epsilon", cfg.epsilon},
         {"seed", cfg.seed ? json(*cfg.seed) : json(nullptr)},
         {"shots", cfg.shots ? json(*cfg.shots) : json(nullptr)},
         {"size_guard", cfg.size_guard}};
  return {{"config", c},
          {"config_hash", hex(fnv1a(c.dump() + '\n' + input_bytes))},
          {"seed", cfg.seed ? json(*cfg.seed) : json(nullptr)},
          {"kernels", latdft::kernels::active().name},
          {"threads", latdft::thread_count()}};
}

void write_summary(const RunConfig& cfg, const json& summary) {
  auto out = open_out(out_dir(cfg) / "summary.json");
  out << summary.dump(2) << '\n';
}

int cmd_validate(const RunConfig& cfg) {
  const auto m = latdft::read_matrix_file(cfg.input);
  try {
    const auto s = latdft::sysnf::validate(m);
    std::cout << "SysNF: valid\nN = " << s.modulus().get_str() << "\nb =";
    for (const auto& v : s.b()) std::cout << ' ' << v.get_str();
    std::cout << "\ngcd(sum b^2 + 1, N) = " << s.condition_gcd().get_str() << '\n';
    return kOk;
  } catch (const latdft::ConditionError& e) {
    std::cout << "SysNF: invalid\n" << e.what() << "\ngcd(sum b^2 + 1, N) = " << e.gcd().get_str() << '\n';
    return kDomain;
  } catch (const latdft::StructureError& e) {
    std::cout << "SysNF: invalid\n" << e.what() << '\n';
    return kDomain;
  }
}

int cmd_reduce(const RunConfig& cfg) {
  if (cfg.epsilon.empty()) throw UsageError("reduce needs --epsilon");
  const std::string bytes = read_file(cfg.input);
  const auto b = latdft::parse_matrix(bytes);
  const auto eps = latdft::parse_rational(cfg.epsilon);
  const auto cert = latdft::sysnf::reduce_to_sysnf(b, eps);
  latdft::Rational worst = 0;
  bool members = true;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const auto v = b.column(j);
    worst = std::max(worst, latdft::sysnf::relative_error_squared(cert, v));
    members = members && latdft::sysnf::maps_into_sysnf(cert, v);
  }
  const double rel = std::sqrt(worst.get_d());
  const bool verified = members && worst <= eps * eps;
  auto out = open_out(out_dir(cfg) / "certificate.json");
  out << latdft::sysnf::to_json(cert).dump(2) << '\n';
  std::cout << "T = " << cert.T.get_str() << "\ndelta = " << cert.delta.get_str()
            << "\nN = " << cert.basis.modulus().get_str()
            << "\nmax relative error over basis vectors = " << rel << " (bound "
            << eps.get_d() << ", " << (verified ? "verified" : "NOT verified") << ")\n";
  json summary = summary_base(cfg, bytes);
  summary["T"] = cert.T.get_str();
  summary["delta"] = cert.delta.get_str();
  summary["max_relative_error"] = rel;
  summary["verified"] = verified;
  write_summary(cfg, summary);
  return verified ? kOk : kInvariant;
}

int cmd_dft(const RunConfig& cfg) {
  const std::string bytes = read_file(cfg.input);
  const auto s = latdft::sysnf::validate(latdft::parse_matrix(bytes));
  const auto f = latdft::dft::dft_matrix(s, cfg.size_guard);
  const fs::path dir = out_dir(cfg);
  {
    auto csv = open_out(dir / "dft.csv");
    latdft::dft::write_matrix_csv(f, csv);
    auto header = open_out(dir / "dft.json");
    header << latdft::dft::matrix_header(f).dump(2) << '\n';
  }
  const double unitarity = latdft::dft::unitarity_deviation(f);
  const auto fourth = latdft::dft::check_fourth_power(f);
  json eig = json::array();
  for (const auto& sp : latdft::dft::eigen_explore(f)) {
    eig.push_back({{"eigenvalue", {sp.eigenvalue.real(), sp.eigenvalue.imag()}},
                   {"multiplicity", sp.multiplicity},
                   {"max_residual", sp.max_residual}});
  }
  std::cout << "order = " << f.order() << "\nmax |F^H F - I| = " << unitarity
            << "\nmax |F^2 - P| = " << fourth.f2_vs_negation
            << "\nmax |F^4 - I| = " << fourth.f4_vs_identity << '\n';
  json summary = summary_base(cfg, bytes);
  summary["order"] = f.order();
  summary["unitarity_deviation"] = unitarity;
  summary["f2_vs_negation"] = fourth.f2_vs_negation;
  summary["f4_vs_identity"] = fourth.f4_vs_identity;
  summary["eigenspaces"] = eig;
  write_summary(cfg, summary);
  return kOk;
}

int cmd_qft_sim(const RunConfig& cfg) {
  const std::string bytes = read_file(cfg.input);
  const auto s = latdft::sysnf::validate(latdft::parse_matrix(bytes));
  const auto f = latdft::dft::dft_matrix(s, cfg.size_guard);
  double worst = 0.0;
  for (std::size_t c = 0; c < f.order(); ++c) {
    const auto out = latdft::qcirc::simulate_sysnf_qft(s, latdft::qcirc::Statevector::basis_state(f.index()[c]));
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto x = out.point_of(i);
      const std::complex<double> want =
          latdft::sysnf::ln_membership(s, x) ? f(latdft::sysnf::ln_index(s, x), c) : 0.0;
      worst = std::max(worst, std::abs(out[i] - want));
    }
  }
  const fs::path dir = out_dir(cfg);
  if (!cfg.dump.empty()) {
    std::vector<std::int64_t> coords;
    std::stringstream ss(cfg.dump);
    for (std::string tok; std::getline(ss, tok, ',');) coords.push_back(std::stoll(tok));
    const latdft::sysnf::ModVector x(s.small_modulus(), coords);
    if (x.size() != s.dimension()) throw UsageError("--dump needs " + std::to_string(s.dimension()) + " coordinates");
    std::vector<latdft::qcirc::TraceStep> trace;
    latdft::qcirc::simulate_sysnf_qft(s, latdft::qcirc::Statevector::basis_state(x), &trace);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      latdft::qcirc::write_snapshot(trace[i].state,
                                    (dir / ("step" + std::to_string(i) + "_" + trace[i].name + ".bin")).string());
    }
  }
  const bool pass = worst <= 1e-10;
  std::cout << "basis states = " << f.order() << "\nmax deviation from dense DFT = " << worst
            << (pass ? " (pass)" : " (FAIL)") << '\n';
  json summary = summary_base(cfg, bytes);
  summary["basis_states"] = f.order();
  summary["max_deviation"] = worst;
  summary["pass"] = pass;
  write_summary(cfg, summary);
  return pass ? kOk : kInvariant;
}

int cmd_sample(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  const std::string bytes = read_file(cfg.input);
  json conf;
  try {
    conf = json::parse(bytes);
  } catch (const json::exception& e) {
    throw latdft::ParseError(std::string("cli: bad sample config: ") + e.what());
  }
  try {
    const fs::path basis_path = fs::path(cfg.input).parent_path() / conf.at("basis").get<std::string>();
    const json& spec = conf.at("spec");
    if (spec.at("kind").get<std::string>() != "gaussian") {
      throw latdft::ParseError("cli: only gaussian specs are supported");
    }
    const double s = spec.at("s").get<double>();
    const double grid_radius = spec.value("grid_radius", 6.0 * s);
    if (cfg.epsilon.empty()) cfg.epsilon = conf.at("epsilon").get<std::string>();
    if (!cfg.shots) cfg.shots = conf.value("shots", std::size_t{0});
    if (!cfg.seed) cfg.seed = conf.value("seed", std::uint64_t{0});

    const std::string basis_bytes = read_file(basis_path.string());
    const auto b = latdft::parse_matrix(basis_bytes);
    latdft::sampler::SampleOptions opt;
    opt.epsilon = latdft::parse_rational(cfg.epsilon);
    opt.shots = *cfg.shots;
    opt.seed = *cfg.seed;
    const auto res = latdft::sampler::sample(latdft::sampler::gaussian_fourier_spec(s), b, opt);
    const auto target = latdft::sampler::brute_force_target(
        latdft::sampler::gaussian_spec(s, grid_radius).amplitude, b, grid_radius);
    const auto pac = latdft::sampler::pac_distance(res.distribution, target, opt.epsilon.get_d());

    const fs::path dir = out_dir(cfg);
    {
      auto csv = open_out(dir / "samples.csv");
      for (std::size_t i = 1; i <= b.rows(); ++i) csv << (i > 1 ? "," : "") << 'x' << i;
      csv << '\n';
      for (const auto& p : res.samples) {
        for (std::size_t i = 0; i < p.size(); ++i) csv << (i ? "," : "") << p[i];
        csv << '\n';
      }
    }
    json report{{"tv_distance", pac.tv_distance},
                {"max_displacement", pac.max_displacement},
                {"decode_mismatch_rate", res.decode_mismatch_rate},
                {"sigma_inverse_applied", true},
                {"l1_distance", 2.0 * pac.tv_distance},
                {"T", res.certificate.T.get_str()},
                {"N", res.certificate.basis.modulus().get_str()},
                {"grid_points", res.grid_points},
                {"boundedness_epsilon", res.boundedness.epsilon},
                {"normalization_error", res.normalization_error},
                {"warnings", res.warnings}};
    {
      auto out = open_out(dir / "report.json");
      out << report.dump(2) << '\n';
    }
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "T = " << res.certificate.T.get_str() << ", N = " << res.certificate.basis.modulus().get_str()
              << "\ntv_distance = " << pac.tv_distance << "\nmax_displacement = " << pac.max_displacement
              << "\ndecode_mismatch_rate = " << res.decode_mismatch_rate << "\nsamples = " << res.samples.size()
              << '\n';
    json summary = summary_base(cfg, bytes + '\n' + basis_bytes);
    summary["report"] = report;
    write_summary(cfg, summary);
    return kOk;
  } catch (const json::exception& e) {
    throw latdft::ParseError(std::string("cli: bad sample config: ") + e.what());
  }
}

int cmd_selftest(const RunConfig& cfg) {
  const auto results = latdft::selftest::run_acceptance();
  bool ok = true;
  for (const auto& r : results) {
    std::cout << latdft::selftest::format_line(r) << '\n';
    ok = ok && r.passed;
  }
  json summary = summary_base(cfg, "");
  summary["criteria"] = latdft::selftest::to_json(results);
  summary["passed"] = ok;
  write_summary(cfg, summary);
  std::cout << summary.dump() << '\n';
  return ok ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice DFT, SysNF reduction and quantum lattice sampler simulation"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t seed = 0;
  std::size_t shots = 0;

  auto add_common = [&](CLI::App* sub, bool input_required) {
    auto* in = sub->add_option("--input", cfg.input, "Input file");
    if (input_required) in->required()->check(CLI::ExistingFile);
    sub->add_option("--out", cfg.out, "Output directory");
  };
  auto* validate = app.add_subcommand("validate", "Check a matrix for systematic normal form");
  validate->add_option("--input", cfg.input, "Matrix file")->required();
  auto* reduce = app.add_subcommand("reduce", "Reduce a basis to systematic normal form");
  add_common(reduce, true);
  reduce->add_option("--epsilon", cfg.epsilon, "Approximation parameter p/q")->required();
  auto* dft = app.add_subcommand("dft", "Build and check the dense lattice DFT");
  add_common(dft, true);
  dft->add_option("--size-guard", cfg.size_guard, "Largest admitted N^(n-1)");
  auto* qft = app.add_subcommand("qft-sim", "Simulate the lattice QFT circuit");
  add_common(qft, true);
  qft->add_option("--size-guard", cfg.size_guard, "Largest admitted N^(n-1)");
  qft->add_option("--dump", cfg.dump, "Write every circuit step for basis state x1,...,xn");
  auto* smp = app.add_subcommand("sample", "Run the quantum sampler simulation");
  add_common(smp, true);
  smp->add_option("--epsilon", cfg.epsilon, "Override the config epsilon p/q");
  auto* seed_opt = smp->add_option("--seed", seed, "Override the config seed");
  auto* shots_opt = smp->add_option("--shots", shots, "Override the config shot count");
  auto* self = app.add_subcommand("selftest", "Run every acceptance criterion");
  self->add_option("--out", cfg.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (*seed_opt) cfg.seed = seed;
  if (*shots_opt) cfg.shots = shots;
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.subcommand == "validate") return cmd_validate(cfg);
    if (cfg.subcommand == "reduce") return cmd_reduce(cfg);
    if (cfg.subcommand == "dft") return cmd_dft(cfg);
    if (cfg.subcommand == "qft-sim") return cmd_qft_sim(cfg);
    if (cfg.subcommand == "sample") return cmd_sample(cfg);
    return cmd_selftest(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const latdft::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const latdft::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const latdft::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
