#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "polyirs/decoder.hpp"
#include "polyirs/errmodel.hpp"

using namespace polyirs;

namespace {

using GfMat = Matrix<std::uint64_t>;

GrsCode<PrimeField> linear_code(std::uint64_t p, std::size_t n, std::size_t k) {
  const PrimeField f(p);
  return GrsCode<PrimeField>::make(f, k, evaluation_points(f, n, AlphaRule{AlphaRule::Kind::Linear, 0}));
}

GfMat random_irs(const GrsCode<PrimeField>& code, std::size_t layers, Rng& rng) {
  GfMat d(layers, code.length());
  for (std::size_t l = 0; l < layers; ++l) {
    std::vector<std::uint64_t> msg(code.dimension());
    for (auto& x : msg) x = rng.uniform_below(code.field().modulus());
    const auto c = code.encode(msg);
    std::copy(c.begin(), c.end(), d.row(l).begin());
  }
  return d;
}

// Does `conn` (length ell) generate every sequence of s?
bool generates(const PrimeField& f, const SyndromeSet<PrimeField>& s, const std::vector<std::uint64_t>& conn) {
  const std::size_t ell = conn.size() - 1;
  for (std::size_t l = 0; l < s.layers(); ++l)
    for (std::size_t n = ell; n < s.length(); ++n) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i <= ell; ++i) acc = f.add(acc, f.mul(conn[i], s.values(l, n - i)));
      if (acc != 0) return false;
    }
  return true;
}

}  // namespace

TEST(Mssr, ZeroErrorReturnsReceivedWord) {
  Rng rng(1);
  const auto code = linear_code(257, 12, 4);
  const auto d = random_irs(code, 3, rng);
  const auto out = mssr_decode(code, d);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.success().corrected, d);
  EXPECT_EQ(out.success().locator.coefficients, std::vector<std::uint64_t>{1});
  EXPECT_EQ(out, cpda_decode(code, d));
}

TEST(Mssr, SingleErrorLocator) {
  const auto code = linear_code(257, 10, 4);
  const PrimeField& f = code.field();
  for (std::size_t j = 0; j < 10; ++j) {
    GfMat r(3, 10, 0);
    r(1, j) = 77;
    const auto reg = synthesize_shift_register(f, compute_syndromes(code, r));
    ASSERT_EQ(reg.length, 1u);
    EXPECT_EQ(reg.connection, (std::vector<std::uint64_t>{1, f.neg(code.alphas()[j])}));
    const auto out = mssr_decode(code, r);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(out.success().locations, std::vector<std::size_t>{j});
  }
}

TEST(Mssr, SynthesisIsMinimalAgainstRankOracle) {
  Rng rng(2);
  for (std::uint64_t p : {5ULL, 13ULL, 257ULL}) {
    const auto code = linear_code(p, std::min<std::uint64_t>(p - 1, 12), 2);
    const PrimeField& f = code.field();
    const std::size_t n = code.length();
    for (int rep = 0; rep < 1500; ++rep) {
      const std::size_t layers = 1 + rep % 4;
      GfMat r(layers, n);
      for (std::size_t l = 0; l < layers; ++l)
        for (auto& v : r.row(l)) v = rng.uniform_below(p);
      if (rep % 3 != 0) {
        const auto e = sample_error(f, ErrorModelSpec{ErrorKind::Uref, static_cast<std::size_t>(rep) % (n - 1)}, layers, n, rng);
        r = inject(f, random_irs(code, layers, rng), e.values);
      }
      const auto syn = compute_syndromes(code, r);
      const auto reg = synthesize_shift_register(f, syn);
      ASSERT_EQ(reg.connection.size(), reg.length + 1);
      ASSERT_EQ(reg.connection[0], 1u);
      ASSERT_TRUE(generates(f, syn, reg.connection));
      std::vector<std::vector<std::uint64_t>> s;
      for (std::size_t l = 0; l < layers; ++l) s.push_back(code.syndromes(r.row(l)));
      const auto t_star = oracle::smallest_consistent_t(s, syn.length() - 1, p);
      if (t_star) {
        ASSERT_EQ(reg.length, *t_star) << "p=" << p << " rep=" << rep;
      } else {
        ASSERT_GE(reg.length, syn.length());
      }
    }
  }
}

TEST(Mssr, IdenticalToCpdaOverSmallField) {
  Rng rng(3);
  const auto code = linear_code(13, 12, 4);
  const PrimeField& f = code.field();
  std::size_t failures = 0;
  for (int rep = 0; rep < 3000; ++rep) {
    const std::size_t layers = 1 + rep % 3;
    const std::size_t t = rep % 9;
    const auto e = sample_error(f, ErrorModelSpec{ErrorKind::Uref, t}, layers, 12, rng);
    const auto r = inject(f, random_irs(code, layers, rng), e.values);
    const auto a = cpda_decode(code, r);
    const auto b = mssr_decode(code, r);
    ASSERT_EQ(a, b) << "rep " << rep;
    failures += a.ok() ? 0 : 1;
  }
  EXPECT_GT(failures, 0u);  // the suite exercises failure paths too
}

TEST(Mssr, RealFieldCorrectsWithinRadius) {
  const RealField f;
  const auto code = GrsCode<RealField>::make(f, 2, evaluation_points(f, 8, AlphaRule{}));
  Rng rng(4);
  for (int rep = 0; rep < 300; ++rep) {
    Matrix<double> d(6, 8);
    for (std::size_t l = 0; l < 6; ++l) {
      const auto c = code.encode(std::vector<double>{rng.normal(), rng.normal()});
      std::copy(c.begin(), c.end(), d.row(l).begin());
    }
    const std::size_t t = 1 + rep % 5;
    const auto e = sample_error(f, ErrorModelSpec{ErrorKind::Gre, t, 0, 0.0, 1.0}, 6, 8, rng);
    const auto r = inject(f, d, e.values);
    const auto out = mssr_decode(code, r);
    ASSERT_TRUE(out.ok()) << "rep " << rep;
    EXPECT_EQ(out.success().locations, e.support);
    for (std::size_t i = 0; i < d.data().size(); ++i) ASSERT_NEAR(out.success().corrected.data()[i], d.data()[i], 1e-6);
    const auto ref = cpda_decode(code, r);
    ASSERT_TRUE(ref.ok());
    EXPECT_EQ(ref.success().locations, out.success().locations);
  }
}
