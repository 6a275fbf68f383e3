#include <gtest/gtest.h>

#include <random>

#include "heun/heun_core.hpp"

using namespace heun;

TEST(NormalizeD, IdentityAboveOne) {
  const HeunParams p{0.5, 1.0, 2.0, 2.0, 0.3, 0.4, 0.5, 0.6, 0.7};
  EXPECT_EQ(normalize_d(p), p);
}

TEST(NormalizeD, MapsBelowOne) {
  const HeunParams p{1, 2, 3, 0.5, 1, 1, 1, 5, 4};
  const HeunParams q = normalize_d(p);
  const HeunParams want{1, 3, 2, 2, 4, 4, 4, 5, 8};
  EXPECT_EQ(q, want);
}

TEST(NormalizeD, InvolutionOnRawForm) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    HeunParams p{U(rng), U(rng), U(rng), 0.1 + 0.8 * std::abs(U(rng)) / 2.0, U(rng), U(rng), U(rng), U(rng), U(rng)};
    const HeunParams back = invert_d(invert_d(p));
    EXPECT_NEAR(back.d, p.d, 1e-15);
    EXPECT_NEAR(back.A, p.A, 1e-13);
    EXPECT_NEAR(back.B, p.B, 1e-13);
    EXPECT_NEAR(back.C, p.C, 1e-13);
    EXPECT_NEAR(back.E, p.E, 1e-13);
    EXPECT_EQ(back.b, p.b);
    EXPECT_EQ(back.c, p.c);
    // Idempotent on the image.
    EXPECT_EQ(normalize_d(normalize_d(p)), normalize_d(p));
  }
}

TEST(NormalizeD, RejectsZeroAndOne) {
  HeunParams p;
  p.d = 0.0;
  EXPECT_THROW(normalize_d(p), DomainError);
  p.d = 1.0;
  EXPECT_THROW(normalize_d(p), DomainError);
}

TEST(AuxConstants, Values) {
  HeunParams p;
  p.c = 0.0;
  p.a = 0.3;
  p.b = 0.9;
  p.d = 3.0;
  auto k = aux_constants(p);
  EXPECT_EQ(k.C_tilde, 0.0);
  EXPECT_EQ(k.D_tilde, 0.0);
  EXPECT_EQ(k.E_tilde, 0.0);

  p = HeunParams{};
  p.a = p.b = 1.0;
  p.c = 2.0;
  p.d = 3.7;
  k = aux_constants(p);
  EXPECT_EQ(k.C_tilde, 0.0);
  EXPECT_DOUBLE_EQ(k.D_tilde, 2.0);
  EXPECT_DOUBLE_EQ(k.E_tilde, -1.0);

  p = HeunParams{};
  p.a = 0.5;
  p.b = 1.0;
  p.c = 4.0;
  p.d = 2.0;
  k = aux_constants(p);
  EXPECT_DOUBLE_EQ(k.C_tilde, -4.0);
  EXPECT_DOUBLE_EQ(k.D_tilde, 5.0);
  EXPECT_DOUBLE_EQ(k.E_tilde, 1.0);
}

TEST(Classify, GeneralWithUnitC) {
  HeunParams p;
  p.a = 0.5;
  p.b = 1.0;
  p.c = 1.0;
  p.d = 2.0;
  p.D = 0.8;
  p.E = -1.1;
  EXPECT_TRUE(classify(p).contains(SolutionClass::General));
}

TEST(Classify, SpecialAndRestricted) {
  HeunParams p;
  p.a = 0.5;
  p.b = 1.0;
  p.c = 2.0;
  p.d = 2.0;
  p.A = 0.0;
  p.B = 1.0;
  p.E = -1.5;
  const auto cl = classify(p);
  EXPECT_TRUE(cl.contains(SolutionClass::Special));
  EXPECT_TRUE(cl.contains(SolutionClass::RestrictedFirst));
  EXPECT_TRUE(cl.contains(SolutionClass::RestrictedSecond));
  EXPECT_FALSE(cl.contains(SolutionClass::General));
  EXPECT_DOUBLE_EQ(restricted_E(p), -1.5);
}

TEST(Classify, InequalityViolatedGivesEmpty) {
  HeunParams p;
  p.a = 0.5;
  p.b = 1.0;
  p.c = 1.0;
  p.d = 2.0;
  p.A = 1.0;  // 4A/d = 2 > (1-a)^2
  const auto cl = classify(p);
  EXPECT_TRUE(cl.classes.empty());
  EXPECT_FALSE(cl.notes.empty());
}

TEST(Classify, OriginalHeunFlag) {
  HeunParams p;
  p.c = 1.0;
  EXPECT_TRUE(classify(p).original_heun);
  p.B = 0.1;
  EXPECT_FALSE(classify(p).original_heun);
}

TEST(Classify, RequiresNormalized) {
  HeunParams p;
  p.d = 0.5;
  EXPECT_THROW(classify(p), DomainError);
}

TEST(Classify, GeneralConditionSurvivesNormalization) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    // d < 1 with the general C-equality holding in the d > 1 image.
    HeunParams q;
    q.a = 0.5;
    q.b = 1.0;
    q.c = 3.0 * U(rng);
    q.d = 1.1 + 3.0 * U(rng);
    q.A = -U(rng);
    q.B = U(rng);
    q.C = class_C(SolutionClass::General, q.c, q.d);
    q.E = U(rng);
    const HeunParams raw = invert_d(q);
    ASSERT_LT(raw.d, 1.0);
    const HeunParams back = normalize_d(raw);
    EXPECT_TRUE(classify(back).contains(SolutionClass::General));
  }
}

TEST(BasisParams, GeneralCollapsing) {
  HeunParams p;
  p.a = p.b = p.c = 1.0;
  p.d = 2.0;
  const auto bp = basis_params(p, SolutionClass::General);
  EXPECT_EQ(bp.alpha, 0.0);
  EXPECT_EQ(bp.beta, 0.0);
  EXPECT_EQ(bp.gamma, 0.0);
  EXPECT_EQ(bp.mu, 0.0);
  EXPECT_EQ(bp.nu, 0.0);
}

TEST(BasisParams, RestrictedFirstMu) {
  HeunParams p;
  p.a = 0.5;
  p.b = 1.0;
  p.d = 3.0;
  p.B = 2.0;  // 4B/(d-1) = 4
  const auto bp = basis_params(p, SolutionClass::RestrictedFirst);
  EXPECT_DOUBLE_EQ(bp.mu, 1.0);
}

TEST(BasisParams, CriticalNuIsZero) {
  HeunParams p;
  p.a = 0.5;
  p.d = 2.0;
  p.A = p.d * (1.0 - p.a) * (1.0 - p.a) / 4.0;
  EXPECT_EQ(basis_params(p, SolutionClass::General).nu, 0.0);
}

TEST(BasisParams, NegativeDiscriminant) {
  HeunParams p;
  p.a = 0.5;
  p.d = 2.0;
  p.A = 1.0;
  EXPECT_THROW(basis_params(p, SolutionClass::General), ConstraintError);
}

TEST(BasisParams, BranchEnumeration) {
  HeunParams p;
  p.a = 0.5;
  p.b = 1.0;
  p.d = 2.0;
  p.A = 0.06;  // nu^2 = 0.25 - 0.12 = 0.13
  p.B = 0.04;  // mu^2 = 0.16
  const auto br = basis_branches(p, SolutionClass::General);
  EXPECT_EQ(br.size(), 4u);
  for (const auto& b : br) {
    EXPECT_GT(b.basis.mu, -1.0);
    EXPECT_GT(b.basis.nu, -1.0);
  }
  // Restricted first: mu + 1 = +-0.4 -> only mu = -0.6 admissible.
  const auto rb = basis_branches(p, SolutionClass::RestrictedFirst);
  for (const auto& b : rb) EXPECT_NEAR(b.basis.mu, -0.6, 1e-15);
}

TEST(BasisParams, GammaPlusHalfC) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    HeunParams p;
    p.a = 0.5;
    p.b = 1.0;
    p.c = 4.0 * U(rng);
    p.d = 1.5 + U(rng);
    p.A = -U(rng);
    p.B = 0.1 + U(rng);
    for (auto cls : {SolutionClass::General, SolutionClass::Special, SolutionClass::RestrictedFirst,
                     SolutionClass::RestrictedSecond}) {
      const auto bp = basis_params(p, cls);
      EXPECT_NEAR(bp.gamma + 0.5 * p.c, cls == SolutionClass::General ? 0.5 : 0.0, 1e-15);
      EXPECT_GT(bp.mu, -1.0);
      EXPECT_GT(bp.nu, -1.0);
    }
  }
}

TEST(SolutionClassNames, RoundTrip) {
  for (auto cls : {SolutionClass::General, SolutionClass::Special, SolutionClass::RestrictedFirst,
                   SolutionClass::RestrictedSecond})
    EXPECT_EQ(parse_solution_class(to_string(cls)), cls);
  EXPECT_THROW(parse_solution_class("bogus"), DomainError);
}
