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

#include "cubeflag/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

#include "cubeflag/digest.hpp"
#include "cubeflag/error.hpp"

namespace cubeflag {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void verification_error(const std::string& what) { throw Error(ErrorKind::kVerification, what); }

template <typename S>
void swap_symmetric(std::vector<S>& W, std::size_t n, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < n; ++j) std::swap(W[a * n + j], W[b * n + j]);
  for (std::size_t i = 0; i < n; ++i) std::swap(W[i * n + a], W[i * n + b]);
}

template <typename S>
void finish_witness(const SymMatrix<S>& M, PsdTranscript<S>& t, const std::vector<S>& L, const std::vector<S>& y) {
  const std::size_t n = M.size();
  std::vector<S> x(n);
  for (std::size_t r = n; r-- > 0;) {
    S v = y[r];
    for (std::size_t s = r + 1; s < n; ++s) v -= L[s * n + r] * x[s];
    x[r] = v;
  }
  t.witness.assign(n, S(0));
  for (std::size_t r = 0; r < n; ++r) t.witness[t.perm[r]] = x[r];
  t.witness_value = quadratic_form(M, t.witness);
  t.psd = false;
  t.lower.clear();
  t.diag.clear();
  if (sign_of(t.witness_value) >= 0) verification_error("internal error: PSD witness is not negative");
}

template <typename S>
Json scalar_json(const S& v);

template <>
Json scalar_json(const Rational& v) {
  return to_string(v);
}

template <>
Json scalar_json(const QuadRational& v) {
  return Json::array({to_string(v.a()), to_string(v.b())});
}

template <typename S>
S scalar_from(const Json& j);

template <>
Rational scalar_from(const Json& j) {
  if (!j.is_string()) bad_input("expected a rational string in certificate");
  return parse_rational(j.get<std::string>());
}

template <>
QuadRational scalar_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    bad_input("expected [\"a\",\"b\"] for a + b*sqrt2 in certificate");
  }
  return QuadRational(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()));
}

template <typename S>
Json vector_json(const std::vector<S>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_json(x));
  return a;
}

template <typename S>
std::vector<S> vector_from(const Json& j) {
  if (!j.is_array()) bad_input("expected an array in certificate");
  std::vector<S> out;
  for (const auto& x : j) out.push_back(scalar_from<S>(x));
  return out;
}

template <typename S>
Json rows_json(const std::vector<S>& data, std::size_t n) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(vector_json(std::vector<S>(data.begin() + static_cast<long>(i * n),
                                              data.begin() + static_cast<long>((i + 1) * n))));
  }
  return rows;
}

template <typename S>
std::vector<S> rows_from(const Json& j, std::size_t& n) {
  if (!j.is_array()) bad_input("expected matrix rows in certificate");
  n = j.size();
  std::vector<S> out;
  for (const auto& row : j) {
    auto r = vector_from<S>(row);
    if (r.size() != n) bad_input("certificate matrix is not square");
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

template <typename S>
std::string decimal_of(const S& v);

template <>
std::string decimal_of(const Rational& v) {
  return to_decimal(v);
}

template <>
std::string decimal_of(const QuadRational& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v.to_double());
  return buf;
}

template <typename S>
constexpr const char* kind_name();
template <>
constexpr const char* kind_name<Rational>() {
  return "rational";
}
template <>
constexpr const char* kind_name<QuadRational>() {
  return "quadratic";
}

template <typename S>
Json cert_json(const BoundCertificate<S>& c) {
  Json j;
  j["format"] = "cubeflag-certificate";
  j["version"] = 1;
  j["kind"] = kind_name<S>();
  j["problem"] = c.problem;
  j["family_digest"] = c.family_digest;
  j["types"] = c.types;
  j["flags"] = c.flags;
  Json mats = Json::array();
  for (const auto& m : c.matrices) {
    std::vector<S> full;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t k = 0; k < m.size(); ++k) full.push_back(m.at(i, k));
    }
    mats.push_back(rows_json(full, m.size()));
  }
  j["matrices"] = mats;
  j["per_H"] = vector_json(c.per_h);
  j["bound"] = scalar_json(c.bound);
  j["bound_decimal"] = decimal_of(c.bound);
  j["attained"] = c.attained;
  Json trans = Json::array();
  for (const auto& t : c.transcripts) {
    Json tj;
    tj["psd"] = t.psd;
    tj["perm"] = t.perm;
    tj["L"] = rows_json(t.lower, t.perm.size());
    tj["D"] = vector_json(t.diag);
    trans.push_back(tj);
  }
  j["transcripts"] = trans;
  return j;
}

template <typename S>
BoundCertificate<S> cert_from(const Json& j) {
  BoundCertificate<S> c;
  try {
    c.problem = j.at("problem").get<std::string>();
    c.family_digest = j.at("family_digest").get<std::string>();
    c.types = j.at("types").get<std::vector<std::string>>();
    c.flags = j.at("flags").get<std::vector<std::vector<std::string>>>();
    for (const auto& mj : j.at("matrices")) {
      std::size_t n = 0;
      auto full = rows_from<S>(mj, n);
      SymMatrix<S> m(n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (full[a * n + b] != full[b * n + a]) verification_error("certificate matrix is not symmetric");
          m.set(a, b, full[a * n + b]);
        }
      }
      c.matrices.push_back(std::move(m));
    }
    c.per_h = vector_from<S>(j.at("per_H"));
    c.bound = scalar_from<S>(j.at("bound"));
    c.attained = j.at("attained").get<std::vector<std::size_t>>();
    for (const auto& tj : j.at("transcripts")) {
      PsdTranscript<S> t;
      t.psd = tj.at("psd").get<bool>();
      t.perm = tj.at("perm").get<std::vector<std::size_t>>();
      std::size_t n = 0;
      t.lower = rows_from<S>(tj.at("L"), n);
      if (n != t.perm.size()) bad_input("transcript L has the wrong size");
      t.diag = vector_from<S>(tj.at("D"));
      c.transcripts.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    bad_input(std::string("malformed certificate: ") + e.what());
  }
  return c;
}

// Checks that do not need the tables.
template <typename S>
void check_internal(const BoundCertificate<S>& c) {
  if (c.matrices.size() != c.transcripts.size() || c.matrices.size() != c.types.size()) {
    verification_error("certificate has mismatched matrix, transcript and type counts");
  }
  for (std::size_t b = 0; b < c.matrices.size(); ++b) {
    if (!c.transcripts[b].psd || !verify_transcript(c.matrices[b], c.transcripts[b])) {
      const auto t = psd_check_exact(c.matrices[b]);
      if (!t.psd) {
        verification_error("NOT PSD: matrix of type " + c.types[b] + " has witness " + format_vector(t.witness) +
                           " with w^T M w = " + scalar_to_string(t.witness_value));
      }
      verification_error("PSD transcript of type " + c.types[b] + " does not match its matrix");
    }
  }
  if (c.per_h.empty()) verification_error("certificate has no per-H values");
  S mx = c.per_h.front();
  for (const auto& v : c.per_h) {
    if (v > mx) mx = v;
  }
  if (!(mx == c.bound)) verification_error("recorded bound is not the maximum of the per-H values");
  std::vector<std::size_t> att;
  for (std::size_t h = 0; h < c.per_h.size(); ++h) {
    if (c.per_h[h] == mx) att.push_back(h);
  }
  if (att != c.attained) verification_error("recorded attaining indices are wrong");
}

}  // namespace

std::string scalar_to_string(const Rational& r) { return to_string(r); }
std::string scalar_to_string(const QuadRational& q) { return q.to_string(); }

template <typename S>
static std::string format_any(const std::vector<S>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + scalar_to_string(v[i]);
  return out + "]";
}
std::string format_vector(const std::vector<Rational>& v) { return format_any(v); }
std::string format_vector(const std::vector<QuadRational>& v) { return format_any(v); }

template <typename S>
S quadratic_form(const SymMatrix<S>& M, const std::vector<S>& x) {
  S total(0);
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (sign_of(x[i]) == 0) continue;
    S row(0);
    for (std::size_t j = 0; j < M.size(); ++j) row += M.at(i, j) * x[j];
    total += x[i] * row;
  }
  return total;
}

template <typename S>
PsdTranscript<S> psd_check_exact(const SymMatrix<S>& M) {
  const std::size_t n = M.size();
  PsdTranscript<S> t;
  t.perm.resize(n);
  std::iota(t.perm.begin(), t.perm.end(), std::size_t{0});
  std::vector<S> W(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) W[i * n + j] = M.at(i, j);
  }
  std::vector<S> L(n * n, S(0));
  for (std::size_t i = 0; i < n; ++i) L[i * n + i] = S(1);
  t.diag.assign(n, S(0));

  for (std::size_t k = 0; k < n; ++k) {
    std::optional<std::size_t> negative;
    std::optional<std::size_t> positive;
    for (std::size_t i = k; i < n; ++i) {
      const int sg = sign_of(W[i * n + i]);
      if (sg < 0 && !negative) negative = i;
      if (sg > 0 && !positive) positive = i;
    }
    if (negative) {
      std::vector<S> y(n, S(0));
      y[*negative] = S(1);
      finish_witness(M, t, L, y);
      return t;
    }
    if (!positive) {
      for (std::size_t i = k; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const int sg = sign_of(W[i * n + j]);
          if (sg == 0) continue;
          std::vector<S> y(n, S(0));
          y[i] = S(1);
          y[j] = S(-sg);
          finish_witness(M, t, L, y);
          return t;
        }
      }
      break;  // the remaining Schur complement is zero
    }
    const std::size_t p = *positive;
    if (p != k) {
      swap_symmetric(W, n, k, p);
      std::swap(t.perm[k], t.perm[p]);
      for (std::size_t c = 0; c < k; ++c) std::swap(L[k * n + c], L[p * n + c]);
    }
    const S d = W[k * n + k];
    t.diag[k] = d;
    for (std::size_t i = k + 1; i < n; ++i) L[i * n + k] = W[i * n + k] / d;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sign_of(L[i * n + k]) == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) W[i * n + j] -= L[i * n + k] * W[k * n + j];
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      W[i * n + k] = S(0);
      W[k * n + i] = S(0);
    }
  }
  t.psd = true;
  t.lower = std::move(L);
  return t;
}

template <typename S>
bool verify_transcript(const SymMatrix<S>& M, const PsdTranscript<S>& t) {
  const std::size_t n = M.size();
  if (!t.psd) {
    return t.witness.size() == n && sign_of(t.witness_value) < 0 && quadratic_form(M, t.witness) == t.witness_value;
  }
  if (t.perm.size() != n || t.lower.size() != n * n || t.diag.size() != n) return false;
  std::vector<bool> used(n, false);
  for (std::size_t p : t.perm) {
    if (p >= n || used[p]) return false;
    used[p] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sign_of(t.diag[i]) < 0) return false;
    if (!(t.lower[i * n + i] == S(1))) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sign_of(t.lower[i * n + j]) != 0) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      S v(0);
      for (std::size_t k = 0; k <= j; ++k) v += t.lower[i * n + k] * t.diag[k] * t.lower[j * n + k];
      if (!(v == M.at(t.perm[i], t.perm[j]))) return false;
    }
  }
  return true;
}

Perturbed perturb_to_psd(const Eigen::MatrixXd& M, const Integer& max_denominator) {
  if (M.rows() != M.cols()) bad_input("matrix is not square");
  const auto n = static_cast<std::size_t>(M.rows());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (!std::isfinite(M(i, j))) bad_input("matrix has a non-finite entry");
      if (std::abs(M(i, j) - M(j, i)) > 1e-6) bad_input("matrix is not symmetric within 1e-6");
    }
  }
  RationalSymMatrix R(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      Rational v = (rationalize(M(a, b), max_denominator) + rationalize(M(b, a), max_denominator)) / 2;
      R.set(i, j, v);
    }
  }
  if (psd_check_exact(R).psd) return {R, Rational(0)};
  const Rational cap = ratio(1, 1024);
  for (Rational delta = Rational(1) / Rational(Integer(1) << 40); delta <= cap; delta *= 2) {
    RationalSymMatrix S = R;
    for (std::size_t i = 0; i < n; ++i) S.set(i, i, R.at(i, i) + delta);
    if (psd_check_exact(S).psd) return {S, delta};
  }
  verification_error("perturbation budget exhausted: matrix is not PSD even after adding 2^-10 * I");
}

template <typename S>
std::vector<S> bound_values(const std::vector<SymMatrix<S>>& matrices, const TableSet& tables) {
  validate(tables);
  if (matrices.size() != tables.tables.size()) {
    bad_input("expected " + std::to_string(tables.tables.size()) + " matrices, got " + std::to_string(matrices.size()));
  }
  for (std::size_t b = 0; b < matrices.size(); ++b) {
    if (matrices[b].size() != tables.tables[b].flag_count) {
      bad_input("matrix for type " + tables.tables[b].type_name + " has size " + std::to_string(matrices[b].size()) +
                ", expected " + std::to_string(tables.tables[b].flag_count));
    }
  }
  std::vector<S> out;
  out.reserve(tables.columns());
  for (std::size_t h = 0; h < tables.columns(); ++h) {
    S v(tables.density[h]);
    for (std::size_t b = 0; b < matrices.size(); ++b) {
      const auto& t = tables.tables[b];
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const Rational& e = t.entries[r][h];
        if (sgn(e) == 0) continue;
        const auto [i, j] = t.rows[r];
        const Rational w = i == j ? e : Rational(2 * e);
        v += matrices[b].at(i, j) * S(w);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

template <typename S>
BoundCertificate<S> certified_bound(const std::vector<SymMatrix<S>>& matrices, const TableSet& tables,
                                    std::string problem) {
  BoundCertificate<S> c;
  c.problem = std::move(problem);
  c.per_h = bound_values(matrices, tables);
  for (std::size_t b = 0; b < matrices.size(); ++b) {
    auto t = psd_check_exact(matrices[b]);
    if (!t.psd) {
      verification_error("NOT PSD: matrix of type " + tables.tables[b].type_name + " has witness " +
                         format_vector(t.witness) + " with w^T M w = " + scalar_to_string(t.witness_value));
    }
    c.transcripts.push_back(std::move(t));
    c.types.push_back(tables.tables[b].type_name);
  }
  c.matrices = matrices;
  c.flags.assign(matrices.size(), {});
  c.family_digest = sha256_hex(to_csv(tables));
  c.bound = c.per_h.front();
  for (const auto& v : c.per_h) {
    if (v > c.bound) c.bound = v;
  }
  for (std::size_t h = 0; h < c.per_h.size(); ++h) {
    if (c.per_h[h] == c.bound) c.attained.push_back(h);
  }
  return c;
}

template <typename S>
void verify_certificate(const BoundCertificate<S>& cert, const TableSet& tables) {
  const std::string digest = sha256_hex(to_csv(tables));
  if (digest != cert.family_digest) {
    verification_error("family digest mismatch: certificate has " + cert.family_digest + ", tables hash to " + digest);
  }
  std::vector<std::string> names;
  for (const auto& t : tables.tables) names.push_back(t.type_name);
  if (names != cert.types) verification_error("certificate types do not match the tables");
  check_internal(cert);
  const auto values = bound_values(cert.matrices, tables);
  for (std::size_t h = 0; h < values.size(); ++h) {
    if (h >= cert.per_h.size() || !(values[h] == cert.per_h[h])) {
      verification_error("per-H value for H_" + std::to_string(h) + " does not match the tables");
    }
  }
  if (values.size() != cert.per_h.size()) verification_error("certificate has the wrong number of per-H values");
}

void verify_certificate(const AnyCertificate& cert, const TableSet& tables) {
  std::visit([&](const auto& c) { verify_certificate(c, tables); }, cert);
}

std::string certificate_to_json(const AnyCertificate& cert) {
  return std::visit([](const auto& c) { return cert_json(c).dump(1) + "\n"; }, cert);
}

AnyCertificate certificate_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad_input(std::string("certificate is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "cubeflag-certificate") bad_input("not a cubeflag certificate");
  const std::string kind = j.value("kind", "");
  if (kind == "rational") {
    auto c = cert_from<Rational>(j);
    check_internal(c);
    return c;
  }
  if (kind == "quadratic") {
    auto c = cert_from<QuadRational>(j);
    check_internal(c);
    return c;
  }
  bad_input("unknown certificate kind '" + kind + "'");
}

#define CUBEFLAG_INSTANTIATE(S)                                                                              \
  template S quadratic_form(const SymMatrix<S>&, const std::vector<S>&);                                     \
  template PsdTranscript<S> psd_check_exact(const SymMatrix<S>&);                                            \
  template bool verify_transcript(const SymMatrix<S>&, const PsdTranscript<S>&);                             \
  template std::vector<S> bound_values(const std::vector<SymMatrix<S>>&, const TableSet&);                   \
  template BoundCertificate<S> certified_bound(const std::vector<SymMatrix<S>>&, const TableSet&, std::string); \
  template void verify_certificate(const BoundCertificate<S>&, const TableSet&);

CUBEFLAG_INSTANTIATE(Rational)
CUBEFLAG_INSTANTIATE(QuadRational)

#undef CUBEFLAG_INSTANTIATE

}  // namespace cubeflag
