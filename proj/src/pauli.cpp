// Copyright 2026 The vqt Authors
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

#include "vqt/pauli.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "vqt/errors.hpp"

namespace vqt {
namespace {

int letter_code(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: return -1;
  }
}

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

// Moves bit k of x to bit 2k.
std::uint64_t spread_bits(std::uint64_t x) {
  std::uint64_t out = 0;
  for (int k = 0; x != 0; ++k, x >>= 1) {
    out |= (x & 1ULL) << (2 * k);
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
  for (char c : letters_) {
    if (letter_code(c) < 0) {
      throw Error(ErrorCode::InvalidArgument, "invalid Pauli letter '" + std::string(1, c) + "'");
    }
  }
}

PauliString PauliString::identity(int num_qubits) {
  return PauliString(std::string(static_cast<std::size_t>(num_qubits), 'I'));
}

PauliString PauliString::from_index(std::uint64_t index, int num_qubits) {
  std::string letters(static_cast<std::size_t>(num_qubits), 'I');
  for (int q = 0; q < num_qubits; ++q) {
    letters[letters.size() - 1 - q] = kLetters[(index >> (2 * q)) & 3ULL];
  }
  return PauliString(std::move(letters));
}

std::uint64_t PauliString::index() const {
  std::uint64_t idx = 0;
  for (int q = 0; q < num_qubits(); ++q) {
    idx |= static_cast<std::uint64_t>(letter_code(letter(q))) << (2 * q);
  }
  return idx;
}

bool PauliString::is_identity() const {
  return letters_.find_first_not_of('I') == std::string::npos;
}

bool PauliString::is_diagonal() const {
  return letters_.find_first_of("XY") == std::string::npos;
}

int PauliString::weight() const {
  int w = 0;
  for (char c : letters_) w += (c != 'I');
  return w;
}

PauliObservable::PauliObservable(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw Error(ErrorCode::InvalidSize, "negative qubit count");
}

void PauliObservable::add_term(const PauliString& s, double coefficient) {
  if (s.num_qubits() != num_qubits_) {
    throw Error(ErrorCode::DimensionMismatch, "Pauli string " + s.str() + " does not act on " +
                                                  std::to_string(num_qubits_) + " qubits");
  }
  const double value = coefficient + this->coefficient(s);
  if (std::abs(value) < kPruneTolerance) {
    terms_.erase(s);
  } else {
    terms_[s] = value;
  }
}

double PauliObservable::coefficient(const PauliString& s) const {
  const auto it = terms_.find(s);
  return it == terms_.end() ? 0.0 : it->second;
}

double PauliObservable::identity_coefficient() const {
  return coefficient(PauliString::identity(num_qubits_));
}

bool PauliObservable::is_diagonal() const {
  for (const auto& [s, c] : terms_) {
    if (!s.is_diagonal()) return false;
  }
  return true;
}

PauliObservable PauliObservable::shifted(double shift) const {
  PauliObservable out = *this;
  out.add_term(PauliString::identity(num_qubits_), shift);
  return out;
}

PauliObservable PauliObservable::traceless() const {
  PauliObservable out = *this;
  out.terms_.erase(PauliString::identity(num_qubits_));
  return out;
}

std::vector<double> PauliObservable::coefficient_vector(bool include_identity) const {
  if (num_qubits_ > kMaxTransformQubits) {
    throw Error(ErrorCode::DimensionOverflow,
                "coefficient vectors are limited to " + std::to_string(kMaxTransformQubits) + " qubits");
  }
  const std::size_t full = std::size_t{1} << (2 * num_qubits_);
  const std::size_t offset = include_identity ? 0 : 1;
  std::vector<double> out(full - offset, 0.0);
  for (const auto& [s, c] : terms_) {
    const auto idx = s.index();
    if (idx >= offset) out[idx - offset] = c;
  }
  return out;
}

std::size_t rank(const PauliObservable& p) { return p.terms().size(); }

CMatrix materialize(const PauliObservable& p, int max_qubits) {
  const int n = p.num_qubits();
  if (n > max_qubits) {
    throw Error(ErrorCode::DimensionOverflow,
                std::to_string(n) + " qubits exceeds the dense cap of " + std::to_string(max_qubits));
  }
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [s, coeff] : p.terms()) {
    std::uint64_t xmask = 0, zmask = 0;
    int ny = 0;
    for (int q = 0; q < n; ++q) {
      const char c = s.letter(q);
      if (c == 'X' || c == 'Y') xmask |= 1ULL << q;
      if (c == 'Y' || c == 'Z') zmask |= 1ULL << q;
      ny += (c == 'Y');
    }
    // s|c> = i^{#Y} (-1)^{popcount(c & zmask)} |c ^ xmask>
    static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex base = coeff * kIPow[ny & 3];
    for (std::uint64_t col = 0; col < dim; ++col) {
      const double sign = (std::popcount(col & zmask) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(col ^ xmask), static_cast<Eigen::Index>(col)) += sign * base;
    }
  }
  return m;
}

std::vector<Complex> pauli_transform(const CMatrix& m) {
  const int n = qubits_for_dimension(static_cast<std::size_t>(m.rows()));
  if (n < 0 || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not square with power-of-two dimension");
  }
  if (n > kMaxTransformQubits) {
    throw Error(ErrorCode::DimensionOverflow,
                "full Pauli extraction is limited to " + std::to_string(kMaxTransformQubits) + " qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  CMatrix w = m;
  const Complex i_unit(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    const std::uint64_t b = std::uint64_t{1} << k;
    for (std::uint64_t c = 0; c < dim; ++c) {
      if (c & b) continue;
      for (std::uint64_t r = 0; r < dim; ++r) {
        if (r & b) continue;
        const auto R = static_cast<Eigen::Index>(r), C = static_cast<Eigen::Index>(c);
        const auto Rb = static_cast<Eigen::Index>(r | b), Cb = static_cast<Eigen::Index>(c | b);
        const Complex m00 = w(R, C), m01 = w(R, Cb), m10 = w(Rb, C), m11 = w(Rb, Cb);
        w(R, C) = m00 + m11;              // I
        w(R, Cb) = m01 + m10;             // X
        w(Rb, C) = i_unit * (m01 - m10);  // Y
        w(Rb, Cb) = m00 - m11;            // Z
      }
    }
  }
  // Slot (r, c) now holds the string whose letter on qubit k is 2 r_k + c_k.
  std::vector<Complex> out(static_cast<std::size_t>(dim * dim));
  std::vector<std::uint64_t> spread(dim);
  for (std::uint64_t x = 0; x < dim; ++x) spread[x] = spread_bits(x);
  for (std::uint64_t c = 0; c < dim; ++c) {
    for (std::uint64_t r = 0; r < dim; ++r) {
      out[2 * spread[r] + spread[c]] = w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

PauliObservable decompose(const CMatrix& h, double hermitian_tolerance) {
  const int n = qubits_for_dimension(static_cast<std::size_t>(h.rows()));
  if (n < 0 || h.rows() != h.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not square with power-of-two dimension");
  }
  const double deviation = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > hermitian_tolerance) {
    throw Error(ErrorCode::NonHermitian, "max |H - H^dagger| = " + std::to_string(deviation));
  }
  const auto traces = pauli_transform(h);
  const double scale = 1.0 / static_cast<double>(std::uint64_t{1} << n);
  PauliObservable out(n);
  for (std::size_t idx = 0; idx < traces.size(); ++idx) {
    const double c = traces[idx].real() * scale;
    if (std::abs(c) >= kPruneTolerance) out.add_term(PauliString::from_index(idx, n), c);
  }
  return out;
}

PauliObservable decompose_diagonal(std::span<const double> values) {
  const int n = qubits_for_dimension(values.size());
  if (n < 0) throw Error(ErrorCode::DimensionMismatch, "diagonal length is not a power of two");
  std::vector<double> h(values.begin(), values.end());
  // Walsh-Hadamard: h[mask] = sum_x f(x) (-1)^{popcount(x & mask)}.
  for (std::size_t len = 1; len < h.size(); len <<= 1) {
    for (std::size_t i = 0; i < h.size(); i += 2 * len) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = h[j], b = h[j + len];
        h[j] = a + b;
        h[j + len] = a - b;
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(h.size());
  PauliObservable out(n);
  for (std::size_t mask = 0; mask < h.size(); ++mask) {
    const double c = h[mask] * scale;
    if (std::abs(c) < kPruneTolerance) continue;
    std::string letters(static_cast<std::size_t>(n), 'I');
    for (int q = 0; q < n; ++q) {
      if (mask & (std::size_t{1} << q)) letters[letters.size() - 1 - q] = 'Z';
    }
    out.add_term(PauliString(std::move(letters)), c);
  }
  return out;
}

double pauli_inner(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient vectors have lengths " +
                                                  std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

int qubits_for_dimension(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) return -1;
  return std::countr_zero(dim);
}

PauliFile parse_pauli_terms(std::istream& in) {
  PauliFile file;
  std::vector<std::pair<PauliString, double>> terms;
  std::string line;
  int line_no = 0;
  int n = -1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      std::istringstream meta(body.substr(1));
      std::string token;
      while (meta >> token) {
        const auto eq = token.find('=');
        if (eq != std::string::npos && eq > 0) {
          file.header[token.substr(0, eq)] = token.substr(eq + 1);
        }
      }
      continue;
    }
    if (const auto hash = body.find('#'); hash != std::string::npos) body = trim(body.substr(0, hash));
    std::istringstream fields(body);
    std::string coeff_text, letters, extra;
    fields >> coeff_text >> letters;
    const auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
    };
    if (coeff_text.empty() || letters.empty()) fail("expected '<coefficient> <pauli letters>'");
    if (fields >> extra) fail("unexpected trailing field '" + extra + "'");
    double value = 0.0;
    const auto* first = coeff_text.data();
    const auto* last = first + coeff_text.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) fail("bad coefficient '" + coeff_text + "'");
    for (char c : letters) {
      if (letter_code(c) < 0) fail("bad Pauli letters '" + letters + "'");
    }
    if (n < 0) n = static_cast<int>(letters.size());
    if (static_cast<int>(letters.size()) != n) {
      fail("string '" + letters + "' has " + std::to_string(letters.size()) + " letters, expected " +
           std::to_string(n));
    }
    terms.emplace_back(PauliString(letters), value);
  }
  if (n < 0) throw Error(ErrorCode::ParseError, "no Pauli terms found");
  file.observable = PauliObservable(n);
  for (const auto& [s, c] : terms) file.observable.add_term(s, c);
  return file;
}

PauliFile read_pauli_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return parse_pauli_terms(in);
}

void write_pauli_terms(std::ostream& out, const PauliObservable& p) {
  for (const auto& [s, c] : p.terms()) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, c);
    out << std::string_view(buf, static_cast<std::size_t>(end - buf)) << ' ' << s.str() << '\n';
  }
}

}  // namespace vqt
