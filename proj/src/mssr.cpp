#include <algorithm>
#include <cmath>

#include "polyirs/decoder.hpp"
#include "polyirs/linalg.hpp"

namespace polyirs {

namespace {

template <class F>
struct Auxiliary {
  std::vector<typename F::Elem> poly;
  std::size_t length = 0;
  long position = -1;
  typename F::Elem discrepancy;
};

template <class F>
ShiftRegister<F> synthesize_core(const F& f, const SyndromeSet<F>& syn) {
  using Elem = typename F::Elem;
  const std::size_t layers = syn.layers();
  const std::size_t len = syn.length();

  std::vector<Elem> lambda{f.one()};
  std::size_t ell = 0;
  std::vector<Auxiliary<F>> aux(layers, Auxiliary<F>{{f.one()}, 0, -1, f.one()});

  for (std::size_t n = 0; n < len; ++n) {
    for (std::size_t l = 0; l < layers; ++l) {
      if (n < ell) continue;
      Elem delta = f.zero();
      double floor = 0.0;
      for (std::size_t i = 0; i <= ell && i < lambda.size(); ++i) {
        delta = f.add(delta, f.mul(lambda[i], syn.values(l, n - i)));
        floor += f.magnitude(lambda[i]) * syn.scales(l, n - i);
      }
      bool vanishes;
      if constexpr (F::kExact) {
        vanishes = delta == f.zero();
      } else {
        vanishes = f.negligible(delta, floor, f.tolerances().backward_tol);
      }
      if (vanishes) continue;

      auto& a = aux[l];
      const std::size_t shift = static_cast<std::size_t>(static_cast<long>(n) - a.position);
      const Elem factor = f.div(delta, a.discrepancy);
      std::vector<Elem> next = lambda;
      next.resize(std::max(lambda.size(), a.poly.size() + shift), f.zero());
      for (std::size_t i = 0; i < a.poly.size(); ++i)
        next[i + shift] = f.sub(next[i + shift], f.mul(factor, a.poly[i]));

      const std::size_t grown = std::max(ell, a.length + shift);
      if (grown > ell) {
        a.poly = lambda;
        a.length = ell;
        a.position = static_cast<long>(n);
        a.discrepancy = delta;
      }
      lambda = std::move(next);
      ell = grown;
    }
  }
  lambda.resize(ell + 1, f.zero());
  return ShiftRegister<F>{ell, std::move(lambda)};
}

}  // namespace

template <class F>
ShiftRegister<F> synthesize_shift_register(const F& f, const SyndromeSet<F>& syn) {
  if constexpr (F::kExact) {
    return synthesize_core(f, syn);
  } else {
    // A recurrence is unaffected by scaling a sequence, and the synthesis
    // starts from a unit auxiliary discrepancy, so each sequence is brought
    // to unit size first.
    SyndromeSet<F> norm = syn;
    for (std::size_t l = 0; l < syn.layers(); ++l) {
      double peak = 0.0;
      for (double s : syn.scales.row(l)) peak = std::max(peak, s);
      if (!(peak > 0.0)) continue;
      for (double& v : norm.values.row(l)) v /= peak;
      for (double& v : norm.scales.row(l)) v /= peak;
    }
    return synthesize_core(f, norm);
  }
}

template <class F>
DecodeOutcome<F> mssr_decode(const GrsCode<F>& code, const Matrix<typename F::Elem>& received) {
  const F& f = code.field();
  const auto syn = compute_syndromes(code, received);
  if (detail::all_syndromes_zero(f, syn))
    return DecodeSuccess<F>{received, ErrorLocator<F>{{f.one()}}, {},
                            Matrix<typename F::Elem>(received.rows(), 0)};

  auto reg = synthesize_shift_register(f, syn);
  if (reg.length == 0 || reg.length > t_max(code.length(), code.dimension(), received.rows()))
    return DecodeFailure{FailureReason::NoConsistentT};
  if (detail::key_equation_rank(f, syn, reg.length) < reg.length) return DecodeFailure{FailureReason::RankDeficient};
  return detail::correct_with_locator(code, received, syn, ErrorLocator<F>{std::move(reg.connection)});
}

template ShiftRegister<PrimeField> synthesize_shift_register(const PrimeField&, const SyndromeSet<PrimeField>&);
template ShiftRegister<RealField> synthesize_shift_register(const RealField&, const SyndromeSet<RealField>&);
template DecodeOutcome<PrimeField> mssr_decode(const GrsCode<PrimeField>&, const Matrix<PrimeField::Elem>&);
template DecodeOutcome<RealField> mssr_decode(const GrsCode<RealField>&, const Matrix<RealField::Elem>&);

}  // namespace polyirs
