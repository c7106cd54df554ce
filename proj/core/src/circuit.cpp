// Copyright 2026 The qcell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcell/circuit.hpp"

#include <charconv>
#include <optional>
#include <cmath>
#include <sstream>

namespace qcell {

namespace {

std::size_t bit_of(int qubits, int wire) { return std::size_t{1} << (qubits - wire); }

double parse_number(std::string_view token, int line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ValidationError("circuit text line " + std::to_string(line_no) + ": invalid number '" +
                          std::string(token) + "'");
  }
  return value;
}

int parse_index(std::string_view token, int line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ValidationError("circuit text line " + std::to_string(line_no) + ": invalid index '" +
                          std::string(token) + "'");
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(int qubits) : qubits_(qubits) {
  if (qubits < 1) {
    throw ValidationError("Circuit: qubit count must be at least 1");
  }
}

void Circuit::validate(const Gate& gate) const {
  auto in_range = [&](int w) { return w >= 1 && w <= qubits_; };
  if (const auto* s = std::get_if<SingleGate>(&gate)) {
    if (!in_range(s->wire)) {
      throw ValidationError("single-qubit gate wire " + std::to_string(s->wire) +
                            " outside 1.." + std::to_string(qubits_));
    }
  } else {
    const auto& c = std::get<CnotGate>(gate);
    if (!in_range(c.control) || !in_range(c.target)) {
      throw ValidationError("cnot indices (" + std::to_string(c.control) + ", " +
                            std::to_string(c.target) + ") outside 1.." + std::to_string(qubits_));
    }
    if (c.control == c.target) {
      throw ValidationError("cnot control and target coincide");
    }
  }
}

Circuit& Circuit::add(const Gate& gate) {
  validate(gate);
  gates_.push_back(gate);
  return *this;
}

Circuit& Circuit::single(int wire, const SingleQubitParams& params) {
  return add(SingleGate{wire, params});
}

Circuit& Circuit::cnot(int control, int target) { return add(CnotGate{control, target}); }

Circuit& Circuit::append(const Circuit& other) {
  if (other.qubits_ != qubits_) {
    throw DimensionError("Circuit::append: widths differ");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

std::size_t Circuit::cnot_count() const {
  std::size_t count = 0;
  for (const Gate& g : gates_) {
    count += std::holds_alternative<CnotGate>(g) ? 1 : 0;
  }
  return count;
}

std::size_t Circuit::single_count() const { return gates_.size() - cnot_count(); }

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int qubits, Vector amps) : qubits_(qubits), amps_(std::move(amps)) {
  if (qubits < 1 || qubits > 20) {
    throw ValidationError("StateVector: qubit count out of range");
  }
  if (amps_.size() != (Eigen::Index{1} << qubits)) {
    throw DimensionError("StateVector: expected 2^" + std::to_string(qubits) + " amplitudes");
  }
  if (std::abs(amps_.norm() - 1.0) > kRoundTripTol) {
    throw ValidationError("StateVector: amplitudes are not normalized");
  }
}

StateVector StateVector::basis(int qubits, std::size_t index) {
  if (qubits < 1 || qubits > 20 || index >= (std::size_t{1} << qubits)) {
    throw ValidationError("StateVector::basis: index out of range");
  }
  Vector amps = Vector::Zero(Eigen::Index{1} << qubits);
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(qubits, std::move(amps));
}

StateVector StateVector::from_bits(std::string_view bits) {
  if (bits.empty()) {
    throw ValidationError("StateVector::from_bits: empty bit string");
  }
  std::size_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw ValidationError("StateVector::from_bits: invalid character in '" + std::string(bits) +
                            "'");
    }
    index = (index << 1) | static_cast<std::size_t>(ch - '0');
  }
  return basis(static_cast<int>(bits.size()), index);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(amps_.size()));
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    p[static_cast<std::size_t>(i)] = std::norm(amps_(i));
  }
  return p;
}

std::string basis_label(int qubits, std::size_t index) {
  std::string s(static_cast<std::size_t>(qubits), '0');
  for (int w = 1; w <= qubits; ++w) {
    if (index & bit_of(qubits, w)) {
      s[static_cast<std::size_t>(w - 1)] = '1';
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Matrices

Matrix cnot_matrix(int qubits, int control, int target) {
  Circuit validator(qubits);
  validator.cnot(control, target);
  const std::size_t dim = std::size_t{1} << qubits;
  const std::size_t cbit = bit_of(qubits, control);
  const std::size_t tbit = bit_of(qubits, target);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t j = (i & cbit) ? (i ^ tbit) : i;
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return m;
}

Matrix embed_single(int qubits, int wire, const Matrix& u) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw DimensionError("embed_single: expected a 2x2 matrix");
  }
  if (wire < 1 || wire > qubits) {
    throw ValidationError("embed_single: wire out of range");
  }
  const Matrix left = Matrix::Identity(Eigen::Index{1} << (wire - 1), Eigen::Index{1} << (wire - 1));
  const Matrix right =
      Matrix::Identity(Eigen::Index{1} << (qubits - wire), Eigen::Index{1} << (qubits - wire));
  return kron(kron(left, u), right);
}

Matrix circuit_to_unitary(const Circuit& circuit) {
  const int n = circuit.qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix u = Matrix::Identity(dim, dim);
  for (const Gate& g : circuit.gates()) {
    if (const auto* s = std::get_if<SingleGate>(&g)) {
      u = embed_single(n, s->wire, zyz_compose(s->params)) * u;
    } else {
      const auto& c = std::get<CnotGate>(g);
      u = cnot_matrix(n, c.control, c.target) * u;
    }
  }
  return u;
}

void apply_single_inplace(Matrix& m, int qubits, int wire, const Matrix& u) {
  const std::size_t dim = std::size_t{1} << qubits;
  const std::size_t bit = bit_of(qubits, wire);
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) {
      continue;
    }
    const auto r0 = static_cast<Eigen::Index>(i);
    const auto r1 = static_cast<Eigen::Index>(i | bit);
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      const Complex a = m(r0, col);
      const Complex b = m(r1, col);
      m(r0, col) = u00 * a + u01 * b;
      m(r1, col) = u10 * a + u11 * b;
    }
  }
}

void apply_cnot_inplace(Matrix& m, int qubits, int control, int target) {
  const std::size_t dim = std::size_t{1} << qubits;
  const std::size_t cbit = bit_of(qubits, control);
  const std::size_t tbit = bit_of(qubits, target);
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) {
      m.row(static_cast<Eigen::Index>(i)).swap(m.row(static_cast<Eigen::Index>(i | tbit)));
    }
  }
}

StateVector apply_to_state(const Circuit& circuit, const StateVector& state) {
  if (circuit.qubits() != state.qubits()) {
    throw DimensionError("apply_to_state: circuit acts on " + std::to_string(circuit.qubits()) +
                         " qubits but the state has " + std::to_string(state.qubits()));
  }
  const int n = circuit.qubits();
  Matrix amps = state.amplitudes();
  for (const Gate& g : circuit.gates()) {
    if (const auto* s = std::get_if<SingleGate>(&g)) {
      apply_single_inplace(amps, n, s->wire, zyz_compose(s->params));
    } else {
      const auto& c = std::get<CnotGate>(g);
      apply_cnot_inplace(amps, n, c.control, c.target);
    }
  }
  return StateVector(n, amps.col(0));
}

// ---------------------------------------------------------------------------
// Text format

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.qubits() << '\n';
  for (const Gate& g : circuit.gates()) {
    if (const auto* s = std::get_if<SingleGate>(&g)) {
      out << "sq " << s->wire << ' ' << format_double(s->params.theta1) << ' '
          << format_double(s->params.theta2) << ' ' << format_double(s->params.theta3);
      if (s->params.theta0 != 0.0) {
        out << ' ' << format_double(s->params.theta0);
      }
      out << '\n';
    } else {
      const auto& c = std::get<CnotGate>(g);
      out << "cnot " << c.control << ' ' << c.target << '\n';
    }
  }
  return out.str();
}

Circuit parse_circuit_text(std::string_view text) {
  std::vector<std::string> tokens;
  std::optional<Circuit> circuit;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    tokens.clear();
    std::istringstream words{std::string(line)};
    for (std::string w; words >> w;) {
      tokens.push_back(w);
    }
    if (tokens.empty()) {
      continue;
    }
    const std::string& head = tokens[0];
    auto where = [&] { return "circuit text line " + std::to_string(line_no) + ": "; };
    if (head == "qubits") {
      if (circuit) {
        throw ValidationError(where() + "duplicate 'qubits' header");
      }
      if (tokens.size() != 2) {
        throw ValidationError(where() + "expected 'qubits N'");
      }
      circuit.emplace(parse_index(tokens[1], line_no));
      continue;
    }
    if (!circuit) {
      throw ValidationError(where() + "'qubits N' header must come first");
    }
    if (head == "sq") {
      if (tokens.size() != 5 && tokens.size() != 6) {
        throw ValidationError(where() + "expected 'sq <wire> <theta1> <theta2> <theta3> [<theta0>]'");
      }
      SingleQubitParams p;
      p.theta1 = parse_number(tokens[2], line_no);
      p.theta2 = parse_number(tokens[3], line_no);
      p.theta3 = parse_number(tokens[4], line_no);
      if (tokens.size() == 6) {
        p.theta0 = parse_number(tokens[5], line_no);
      }
      circuit->single(parse_index(tokens[1], line_no), p);
    } else if (head == "cnot") {
      if (tokens.size() != 3) {
        throw ValidationError(where() + "expected 'cnot <control> <target>'");
      }
      circuit->cnot(parse_index(tokens[1], line_no), parse_index(tokens[2], line_no));
    } else {
      throw ValidationError(where() + "unknown directive '" + head + "'");
    }
  }
  if (!circuit) {
    throw ValidationError("circuit text: missing 'qubits N' header");
  }
  return *circuit;
}

}  // namespace qcell
