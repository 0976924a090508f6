#include "polyirs/grs.hpp"

#include <cmath>
#include <sstream>

#include "polyirs/errors.hpp"
#include "polyirs/linalg.hpp"

namespace polyirs {

template <class F>
GrsCode<F> GrsCode<F>::make(F field, std::size_t n, std::size_t k, std::vector<Elem> alphas, std::vector<Elem> v) {
  if (alphas.size() != n || v.size() != n) throw InvalidParameters("alphas and v must have length N");
  if (k < 1 || k >= n) throw InvalidParameters("GRS code needs 1 <= K < N");
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == field.zero()) throw InvalidParameters("multiplier v_" + std::to_string(i) + " is zero");
    for (std::size_t j = i + 1; j < n; ++j)
      if (alphas[i] == alphas[j]) throw InvalidParameters("evaluation points must be distinct");
  }

  std::vector<Elem> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    Elem denom = v[i];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) denom = field.mul(denom, field.sub(alphas[i], alphas[j]));
    u[i] = field.inv(denom);
    // u_i * v_i * prod (alpha_i - alpha_j) = 1
    if (!field.equal(field.mul(u[i], denom), field.one(), 1.0))
      throw InvalidParameters("dual multiplier identity failed at position " + std::to_string(i));
  }
  return GrsCode(std::move(field), k, std::move(alphas), std::move(v), std::move(u));
}

template <class F>
GrsCode<F> GrsCode<F>::make(F field, std::size_t k, std::vector<Elem> alphas) {
  const std::size_t n = alphas.size();
  std::vector<Elem> v(n, field.one());
  return make(std::move(field), n, k, std::move(alphas), std::move(v));
}

template <class F>
typename GrsCode<F>::Codeword GrsCode<F>::encode(std::span<const Elem> message) const {
  if (message.size() != k_) throw UsageError("message length must equal K");
  Codeword c(length());
  for (std::size_t i = 0; i < length(); ++i) {
    Elem acc = field_.zero();
    for (std::size_t d = k_; d-- > 0;) acc = field_.add(field_.mul(acc, alphas_[i]), message[d]);
    c[i] = field_.mul(v_[i], acc);
  }
  return c;
}

template <class F>
std::vector<typename F::Elem> GrsCode<F>::syndromes(std::span<const Elem> received) const {
  if (received.size() != length()) throw UsageError("received word length must equal N");
  std::vector<Elem> s(redundancy(), field_.zero());
  for (std::size_t j = 0; j < length(); ++j) {
    Elem term = field_.mul(u_[j], received[j]);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = field_.add(s[i], term);
      term = field_.mul(term, alphas_[j]);
    }
  }
  return s;
}

template <class F>
std::vector<double> GrsCode<F>::syndrome_scales(std::span<const Elem> received) const {
  if (received.size() != length()) throw UsageError("received word length must equal N");
  std::vector<double> s(redundancy(), 0.0);
  for (std::size_t j = 0; j < length(); ++j) {
    double term = field_.magnitude(u_[j]) * field_.magnitude(received[j]);
    const double a = field_.magnitude(alphas_[j]);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] += term;
      term *= a;
    }
  }
  return s;
}

template <class F>
bool GrsCode<F>::is_codeword(std::span<const Elem> word) const {
  const auto s = syndromes(word);
  const auto scale = syndrome_scales(word);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if constexpr (F::kExact) {
      if (s[i] != field_.zero()) return false;
    } else {
      if (!field_.negligible(s[i], scale[i], field_.tolerances().eq_tol)) return false;
    }
  }
  return true;
}

template <class F>
typename GrsCode<F>::Message GrsCode<F>::interpolate(std::span<const Elem> symbols) const {
  if (symbols.size() != length()) throw UsageError("symbol vector length must equal N");
  const std::size_t rows = F::kExact ? k_ : length();
  Matrix<Elem> vander(rows, k_);
  std::vector<Elem> rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    Elem p = v_[i];
    for (std::size_t d = 0; d < k_; ++d) {
      vander(i, d) = p;
      p = field_.mul(p, alphas_[i]);
    }
    rhs[i] = symbols[i];
  }

  Message msg;
  if constexpr (F::kExact) {
    auto sol = solve_linear(field_, vander, rhs);
    msg = std::move(sol.solution);
    if (encode(msg) != Codeword(symbols.begin(), symbols.end()))
      throw NotACodeword("symbols are not a codeword of the GRS code");
  } else {
    auto sol = solve_linear(field_, vander, rhs, /*equilibrate=*/true);
    double norm = 0.0;
    for (double s : symbols) norm += s * s;
    norm = std::sqrt(norm);
    if (sol.rank < k_ || sol.residual > field_.tolerances().residual_tol * norm)
      throw NotACodeword("least-squares residual exceeds tolerance");
    msg = std::move(sol.solution);
  }
  return msg;
}

AlphaRule AlphaRule::parse(const std::string& text) {
  AlphaRule r;
  if (text == "linear") {
    r.kind = Kind::Linear;
  } else if (text == "primitive") {
    r.kind = Kind::Primitive;
  } else if (text.rfind("pow:", 0) == 0) {
    r.kind = Kind::Power;
    try {
      std::size_t used = 0;
      r.base = std::stod(text.substr(4), &used);
      if (used != text.size() - 4) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InvalidParameters("bad alpha base in '" + text + "'");
    }
  } else {
    throw InvalidParameters("unknown alpha rule '" + text + "' (expected pow:<base>, linear or primitive)");
  }
  return r;
}

std::string AlphaRule::to_string() const {
  switch (kind) {
    case Kind::Linear:
      return "linear";
    case Kind::Primitive:
      return "primitive";
    case Kind::Power: {
      std::ostringstream os;
      os << "pow:" << base;
      return os.str();
    }
  }
  return {};
}

template <class F>
std::vector<typename F::Elem> evaluation_points(const F& field, std::size_t n, const AlphaRule& rule) {
  using Elem = typename F::Elem;
  std::vector<Elem> out(n);
  Elem base{};
  switch (rule.kind) {
    case AlphaRule::Kind::Linear:
      for (std::size_t i = 0; i < n; ++i) out[i] = field.from_int(static_cast<std::int64_t>(i + 1));
      break;
    case AlphaRule::Kind::Primitive:
      if constexpr (F::kExact) {
        base = field.primitive_root();
      } else {
        throw InvalidParameters("primitive evaluation points need a finite field");
      }
      [[fallthrough]];
    case AlphaRule::Kind::Power:
      if (rule.kind == AlphaRule::Kind::Power) {
        if constexpr (F::kExact) {
          if (rule.base != std::floor(rule.base) || rule.base < 0)
            throw InvalidParameters("power base must be a non-negative integer over GF(p)");
          base = field.from_int(static_cast<std::int64_t>(rule.base));
        } else {
          base = field.element(rule.base);
        }
      }
      {
        Elem p = field.one();
        for (std::size_t i = 0; i < n; ++i) {
          out[i] = p;
          p = field.mul(p, base);
        }
      }
      break;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (out[i] == out[j])
        throw InvalidParameters("rule " + rule.to_string() + " does not give " + std::to_string(n) +
                                " distinct points in " + field.name());
  return out;
}

template class GrsCode<PrimeField>;
template class GrsCode<RealField>;
template std::vector<PrimeField::Elem> evaluation_points(const PrimeField&, std::size_t, const AlphaRule&);
template std::vector<RealField::Elem> evaluation_points(const RealField&, std::size_t, const AlphaRule&);

}  // namespace polyirs
