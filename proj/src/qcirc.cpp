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

#include "latdft/qcirc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "latdft/error.hpp"
#include "latdft/kernels/kernels.hpp"
#include "latdft/parallel.hpp"

namespace latdft::qcirc {
namespace {

std::size_t checked_power(std::int64_t base, std::size_t exponent, std::size_t guard) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (out > guard / static_cast<std::size_t>(base)) {
      throw SizeGuardError("qcirc: state dimension " + std::to_string(base) + "^" +
                           std::to_string(exponent) + " exceeds the guard " +
                           std::to_string(guard));
    }
    out *= static_cast<std::size_t>(base);
  }
  return out;
}

void require_basis(const SysNFBasis& s, const Statevector& psi, std::size_t registers) {
  if (psi.modulus() != s.small_modulus()) {
    throw ModulusMismatchError("qcirc: state modulus " + std::to_string(psi.modulus()) +
                               " does not match N = " + s.modulus().get_str());
  }
  if (psi.registers() != registers) {
    throw DimensionError("qcirc: state has " + std::to_string(psi.registers()) +
                         " registers, expected " + std::to_string(registers));
  }
}

// x_1 of the uncompute formula from the sheared registers y_2..y_n.
struct Uncomputer {
  std::int64_t n;
  std::vector<std::int64_t> b;
  std::int64_t inv;

  explicit Uncomputer(const SysNFBasis& s) : n(s.small_modulus()), b(s.small_b()) {
    if (!s.coprime_condition()) {
      throw ConditionError("qcirc: sum b_j^2 + 1 is not invertible mod N, gcd = " +
                               s.condition_gcd().get_str(),
                           s.condition_gcd());
    }
    const Integer c = s.condition_value() % s.modulus();
    inv = sysnf::inverse_mod(to_int64(c), n);
  }

  template <class Y>
  std::int64_t first(const Y& y, std::size_t offset) const {
    __int128 acc = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc += static_cast<__int128>(b[j]) * y[offset + j];
      acc %= n;
    }
    return sysnf::mul_mod(static_cast<std::int64_t>(acc), inv, n);
  }
};

}  // namespace

Statevector::Statevector(std::int64_t modulus, std::size_t registers, std::size_t size_guard)
    : modulus_(modulus), registers_(registers) {
  if (modulus < 1) throw ParameterError("qcirc: modulus must be positive");
  amps_.assign(checked_power(modulus, registers, size_guard), Complex(0.0, 0.0));
}

Statevector Statevector::basis_state(const ModVector& x, std::size_t size_guard) {
  Statevector psi(x.modulus(), x.size(), size_guard);
  psi[psi.index_of(x)] = 1.0;
  return psi;
}

std::size_t Statevector::index_of(const ModVector& x) const {
  if (x.modulus() != modulus_) throw ModulusMismatchError("qcirc: point modulus mismatch");
  if (x.size() != registers_) throw DimensionError("qcirc: point dimension mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < registers_; ++i) {
    idx = idx * static_cast<std::size_t>(modulus_) + static_cast<std::size_t>(x[i]);
  }
  return idx;
}

ModVector Statevector::point_of(std::size_t index) const {
  std::vector<std::int64_t> c(registers_);
  for (std::size_t i = registers_; i-- > 0;) {
    c[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(modulus_));
    index /= static_cast<std::size_t>(modulus_);
  }
  return ModVector(modulus_, std::move(c));
}

double Statevector::norm() const { return std::sqrt(kernels::active().norm_sq(amps_.data(), amps_.size())); }

Statevector step_shear(const SysNFBasis& s, const Statevector& psi, int sign) {
  require_basis(s, psi, s.dimension());
  const std::int64_t n = s.small_modulus();
  auto b = s.small_b();
  if (sign < 0) {
    for (auto& v : b) v = sysnf::mod_reduce(-v, n);
  }
  Statevector out(n, psi.registers(), psi.size());
  parallel_for(
      0, psi.size(),
      [&](std::size_t i) {
        const ModVector x = psi.point_of(i);
        std::vector<std::int64_t> y(x.coords());
        for (std::size_t j = 1; j < y.size(); ++j) {
          y[j] = sysnf::mod_reduce(y[j] + sysnf::mul_mod(b[j - 1], x[0], n), n);
        }
        out[out.index_of(ModVector(n, std::move(y)))] = psi[i];
      },
      256);
  return out;
}

Statevector step_uncompute_first(const SysNFBasis& s, const Statevector& psi) {
  require_basis(s, psi, s.dimension());
  const Uncomputer unc(s);
  const std::int64_t n = s.small_modulus();
  Statevector out(n, psi.registers() - 1, psi.size());
  const std::size_t block = out.size();
  std::vector<unsigned char> bad(block, 0);
  parallel_for(
      0, block,
      [&](std::size_t r) {
        const ModVector y = out.point_of(r);
        const auto x1 = static_cast<std::size_t>(unc.first(y.coords(), 0));
        for (std::size_t first = 0; first < static_cast<std::size_t>(n); ++first) {
          const Complex a = psi[first * block + r];
          if (first == x1) {
            out[r] = a;
          } else if (std::abs(a) > kSupportTolerance) {
            bad[r] = 1;
          }
        }
      },
      256);
  const auto it = std::find(bad.begin(), bad.end(), 1);
  if (it != bad.end()) {
    const ModVector y = out.point_of(static_cast<std::size_t>(it - bad.begin()));
    std::string where;
    for (std::size_t j = 0; j < y.size(); ++j) where += (j ? "," : "") + std::to_string(y[j]);
    throw UncomputeError("qcirc: amplitude above tolerance on a state with y = (" + where +
                         ") whose first register disagrees with the uncompute formula");
  }
  return out;
}

Statevector qft_mod_n(const Statevector& psi, std::size_t reg) {
  if (reg >= psi.registers()) {
    throw ParameterError("qcirc: register " + std::to_string(reg) + " out of range");
  }
  const std::int64_t n = psi.modulus();
  const auto un = static_cast<std::size_t>(n);
  std::size_t stride = 1;
  for (std::size_t i = reg + 1; i < psi.registers(); ++i) stride *= un;
  const std::size_t fibers = psi.size() / un;
  const auto tw = kernels::twiddle_table(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  // Split long fibers across output ranges so a single register still uses
  // every worker.
  const std::size_t workers = thread_count();
  const std::size_t chunks = fibers >= workers ? 1 : std::min(un, (workers + fibers - 1) / fibers);
  const std::size_t chunk_len = (un + chunks - 1) / chunks;
  Statevector out(n, psi.registers(), psi.size());
  const auto& k = kernels::active();
  parallel_for(0, fibers * chunks, [&](std::size_t item) {
    const std::size_t f = item / chunks;
    const std::size_t t0 = (item % chunks) * chunk_len;
    if (t0 >= un) return;
    const std::size_t len = std::min(chunk_len, un - t0);
    const std::size_t base = (f / stride) * un * stride + f % stride;
    std::vector<Complex> amps;
    std::vector<std::int64_t> start, step;
    for (std::size_t y = 0; y < un; ++y) {
      const Complex a = psi[base + y * stride];
      if (a == Complex(0.0, 0.0)) continue;
      amps.push_back(a * scale);
      step.push_back(static_cast<std::int64_t>(y));
      start.push_back(sysnf::mul_mod(static_cast<std::int64_t>(y), static_cast<std::int64_t>(t0), n));
    }
    std::vector<Complex> res(len);
    k.phase_accumulate(amps.data(), start.data(), step.data(), amps.size(), n, tw.data(), len,
                       res.data());
    for (std::size_t t = 0; t < len; ++t) out[base + (t0 + t) * stride] = res[t];
  });
  return out;
}

Statevector step_apply_basis(const SysNFBasis& s, const Statevector& psi) {
  require_basis(s, psi, s.dimension() - 1);
  const std::int64_t n = s.small_modulus();
  const auto b = s.small_b();
  Statevector out(n, s.dimension(), psi.size() * static_cast<std::size_t>(n));
  parallel_for(
      0, psi.size(),
      [&](std::size_t i) {
        const ModVector z = psi.point_of(i);
        __int128 acc = 0;
        for (std::size_t j = 0; j < z.size(); ++j) {
          acc += static_cast<__int128>(b[j]) * z[j];
          acc %= n;
        }
        out[static_cast<std::size_t>(acc) * psi.size() + i] = psi[i];
      },
      256);
  return out;
}

Statevector simulate_sysnf_qft(const SysNFBasis& s, const Statevector& psi,
                               std::vector<TraceStep>* trace) {
  require_basis(s, psi, s.dimension());
  Statevector on(psi.modulus(), psi.registers(), psi.size());
  Statevector off = psi;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (sysnf::ln_membership(s, psi.point_of(i))) {
      on[i] = psi[i];
      off[i] = 0.0;
    }
  }
  auto record = [&](const char* name, const Statevector& st) {
    if (trace) trace->push_back({name, st});
  };
  record("input", on);
  Statevector cur = step_shear(s, on);
  record("shear", cur);
  cur = step_uncompute_first(s, cur);
  record("uncompute", cur);
  for (std::size_t r = 0; r < cur.registers(); ++r) {
    cur = qft_mod_n(cur, r);
    record(("qft" + std::to_string(r + 2)).c_str(), cur);
  }
  cur = step_apply_basis(s, cur);
  record("apply_basis", cur);
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += off[i];
  record("output", cur);
  return cur;
}

dft::LatticeFunction lattice_qft(const dft::LatticeFunction& f, std::size_t size_guard) {
  const SysNFBasis& s = f.basis;
  const std::int64_t n = s.small_modulus();
  const std::size_t order = sysnf::ln_order(s, size_guard);
  if (f.values.size() != order) {
    throw DimensionError("qcirc: lattice function has " + std::to_string(f.values.size()) +
                         " values, expected " + std::to_string(order));
  }
  const auto b = s.small_b();
  const Uncomputer unc(s);
  Statevector reg(n, s.dimension() - 1, order);
  std::vector<unsigned char> bad(order, 0);
  parallel_for(
      0, order,
      [&](std::size_t i) {
        if (f.values[i] == Complex(0.0, 0.0)) return;
        const ModVector x = sysnf::ln_point(s, i);
        std::vector<std::int64_t> y(b.size());
        for (std::size_t j = 0; j < b.size(); ++j) {
          y[j] = sysnf::mod_reduce(x[j + 1] + sysnf::mul_mod(b[j], x[0], n), n);
        }
        if (unc.first(y, 0) != x[0]) bad[i] = 1;
        reg[reg.index_of(ModVector(n, std::move(y)))] = f.values[i];
      },
      256);
  if (std::find(bad.begin(), bad.end(), 1) != bad.end()) {
    throw UncomputeError("qcirc: sheared lattice point fails the uncompute formula");
  }
  for (std::size_t r = 0; r < reg.registers(); ++r) reg = qft_mod_n(reg, r);
  // The basis step sends |z> to the L_N point with coordinates z, which is
  // index z in enumerate_ln order.
  return {s, std::move(reg.amplitudes())};
}

Statevector embed(const dft::LatticeFunction& f, std::size_t size_guard) {
  const SysNFBasis& s = f.basis;
  Statevector psi(s.small_modulus(), s.dimension(), size_guard);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    psi[psi.index_of(sysnf::ln_point(s, i))] = f.values[i];
  }
  return psi;
}

dft::LatticeFunction restrict_to_ln(const SysNFBasis& s, const Statevector& psi) {
  require_basis(s, psi, s.dimension());
  dft::LatticeFunction out{s, std::vector<Complex>(sysnf::ln_order(s, psi.size()))};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const ModVector x = psi.point_of(i);
    if (sysnf::ln_membership(s, x)) {
      out.values[sysnf::ln_index(s, x)] = psi[i];
    } else if (std::abs(psi[i]) > kSupportTolerance) {
      throw UncomputeError("qcirc: state carries amplitude off L_N");
    }
  }
  return out;
}

void write_snapshot(const Statevector& psi, const std::string& bin_path) {
  std::ofstream bin(bin_path, std::ios::binary);
  if (!bin) throw Error("qcirc: cannot open " + bin_path + " for writing");
  auto put = [&](double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    bin.write(bytes, 8);
  };
  for (const Complex& a : psi.amplitudes()) {
    put(a.real());
    put(a.imag());
  }
  std::ofstream meta(bin_path + ".json");
  if (!meta) throw Error("qcirc: cannot open " + bin_path + ".json for writing");
  meta << nlohmann::json{{"N", psi.modulus()}, {"n", psi.registers()}}.dump() << '\n';
}

Statevector read_snapshot(const std::string& bin_path) {
  std::ifstream meta(bin_path + ".json");
  if (!meta) throw ParseError("qcirc: missing sidecar " + bin_path + ".json");
  nlohmann::json j;
  try {
    meta >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("qcirc: bad sidecar: ") + e.what());
  }
  Statevector psi(j.at("N").get<std::int64_t>(), j.at("n").get<std::size_t>());
  std::ifstream bin(bin_path, std::ios::binary);
  if (!bin) throw ParseError("qcirc: cannot open " + bin_path);
  auto get = [&]() {
    unsigned char bytes[8];
    if (!bin.read(reinterpret_cast<char*>(bytes), 8)) throw ParseError("qcirc: snapshot is truncated");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return std::bit_cast<double>(bits);
  };
  for (auto& a : psi.amplitudes()) {
    const double re = get();
    a = {re, get()};
  }
  return psi;
}

}  // namespace latdft::qcirc
