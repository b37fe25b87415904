// Copyright 2026 The cubeflag Authors
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

// Exact PSD verification and rigorous bounds from (untrusted) floating SDP
// solutions. Scalars are Rational or QuadRational (a + b sqrt 2).

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cubeflag/table.hpp"

namespace cubeflag {

template <typename S>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }
  const S& at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, const S& v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }
  static SymMatrix identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, S(1));
    return m;
  }
  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<S> data_;
};

using RationalSymMatrix = SymMatrix<Rational>;
using QuadSymMatrix = SymMatrix<QuadRational>;

// Outcome of LDL^T with symmetric pivoting. When psd, P M P^T = L D L^T with
// L unit lower triangular (row-major n x n), D >= 0, and P sending row t to
// perm[t]. Otherwise witness satisfies witness^T M witness = witness_value < 0.
template <typename S>
struct PsdTranscript {
  bool psd = false;
  std::vector<std::size_t> perm;
  std::vector<S> lower;
  std::vector<S> diag;
  std::vector<S> witness;
  S witness_value{};

  friend bool operator==(const PsdTranscript&, const PsdTranscript&) = default;
};

template <typename S>
PsdTranscript<S> psd_check_exact(const SymMatrix<S>& M);

// Re-checks a transcript against M with exact arithmetic.
template <typename S>
bool verify_transcript(const SymMatrix<S>& M, const PsdTranscript<S>& t);

template <typename S>
S quadratic_form(const SymMatrix<S>& M, const std::vector<S>& x);

struct Perturbed {
  RationalSymMatrix matrix;
  Rational delta;  // 0 when no shift was needed
};

// Rationalize entrywise, average with the transpose, then add delta * I for
// delta = 2^-40, 2^-39, ... until exactly PSD. Fails past 2^-10.
Perturbed perturb_to_psd(const Eigen::MatrixXd& M, const Integer& max_denominator);

template <typename S>
struct BoundCertificate {
  std::string problem;
  std::string family_digest;  // SHA-256 of the tables CSV
  std::vector<std::string> types;
  std::vector<std::vector<std::string>> flags;  // descriptive lines per type
  std::vector<SymMatrix<S>> matrices;
  std::vector<S> per_h;  // d(H) + c_H
  S bound{};
  std::vector<std::size_t> attained;
  std::vector<PsdTranscript<S>> transcripts;

  friend bool operator==(const BoundCertificate&, const BoundCertificate&) = default;
};

using RationalCertificate = BoundCertificate<Rational>;
using QuadCertificate = BoundCertificate<QuadRational>;
using AnyCertificate = std::variant<RationalCertificate, QuadCertificate>;

// d(H) + sum_b sum_{i<=j} w_ij m^b_ij T^b_ij(H) with w = 1 on the diagonal
// and 2 off it.
template <typename S>
std::vector<S> bound_values(const std::vector<SymMatrix<S>>& matrices, const TableSet& tables);

// Throws a verification error naming the witness if some matrix is not PSD.
template <typename S>
BoundCertificate<S> certified_bound(const std::vector<SymMatrix<S>>& matrices, const TableSet& tables,
                                    std::string problem = {});

// Recomputes digest, transcripts, per-H values and the bound; throws a
// verification error on any disagreement.
template <typename S>
void verify_certificate(const BoundCertificate<S>& cert, const TableSet& tables);
void verify_certificate(const AnyCertificate& cert, const TableSet& tables);

std::string certificate_to_json(const AnyCertificate& cert);
// Parses and checks internal consistency (transcripts, bound = max per_H).
AnyCertificate certificate_from_json(const std::string& text);

std::string scalar_to_string(const Rational& r);
std::string scalar_to_string(const QuadRational& q);
std::string format_vector(const std::vector<Rational>& v);
std::string format_vector(const std::vector<QuadRational>& v);

}  // namespace cubeflag
