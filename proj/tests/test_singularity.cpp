#include <cmath>

#include <gtest/gtest.h>

#include "legfront/legfront.hpp"

using namespace legfront;

namespace {

Eigen::VectorXd pt(double a, double b) {
  Eigen::VectorXd p(2);
  p << a, b;
  return p;
}

}  // namespace

TEST(WrinkleFront, OriginValue) {
  const auto J = wrinkle_front(WrinkleModel{}, pt(0, 0));
  EXPECT_EQ(J.value.size(), 3);
  EXPECT_EQ(J.value[1], 0.0);
  EXPECT_EQ(J.value[2], 0.0);
}

TEST(WrinkleFront, RankDropsExactlyOnSphere) {
  WrinkleModel w;
  for (double u : linspace(-2, 2, 81))
    for (double t : linspace(-2, 2, 81)) {
      const double s = u * u + t * t - 1;
      if (std::abs(s) < 0.05) continue;
      EXPECT_EQ(numeric_rank(wrinkle_front(w, pt(u, t)).jac), 2);
    }
  for (double th : linspace(0, 2 * M_PI, 37))
    EXPECT_EQ(numeric_rank(wrinkle_front(w, pt(std::cos(th), std::sin(th))).jac), 1) << th;
}

TEST(WrinkleFront, JacobianMatchesFiniteDifferences) {
  for (auto mode : {WrinkleMode::Standard, WrinkleMode::InsideOut, WrinkleMode::Embryo}) {
    WrinkleModel w;
    w.mode = mode;
    w.tau = 0.3;
    for (double u : {-1.3, 0.2, 0.9})
      for (double t : {-0.7, 0.4, 1.6}) {
        const auto J = wrinkle_front(w, pt(u, t));
        const auto L = wrinkle_lift(w, pt(u, t));
        const double h = 1e-6;
        for (int c = 0; c < 2; ++c) {
          Eigen::VectorXd a = pt(u, t), b = pt(u, t);
          a[c] -= h;
          b[c] += h;
          const Eigen::VectorXd fd = (wrinkle_front(w, b).value - wrinkle_front(w, a).value) / (2 * h);
          const Eigen::VectorXd ld = (wrinkle_lift(w, b).value - wrinkle_lift(w, a).value) / (2 * h);
          EXPECT_LT((fd - J.jac.col(c)).lpNorm<Eigen::Infinity>(), 1e-6);
          EXPECT_LT((ld - L.jac.col(c)).lpNorm<Eigen::Infinity>(), 1e-6);
        }
      }
  }
}

TEST(WrinkleFront, NegativeEmbryoIsImmersion) {
  WrinkleModel w;
  w.mode = WrinkleMode::Embryo;
  w.tau = -0.5;
  for (double u : linspace(-2, 2, 101))
    for (double t : linspace(-2, 2, 101)) EXPECT_EQ(numeric_rank(wrinkle_front(w, pt(u, t)).jac), 2);
}

TEST(WrinkleLift, ValueAtOrigin) {
  const auto g = wrinkle_lift_uv(0, 0);
  Eigen::VectorXd want(5);
  want << 0, 0, 0, 0, -1.0 / 3;
  EXPECT_LT((g.value - want).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(WrinkleLift, PullbackVanishes) {
  double worst = 0;
  for (double u : linspace(-2, 2, 100))
    for (double v : linspace(-2, 2, 100)) worst = std::max(worst, pullback_uv(wrinkle_lift_uv(u, v)));
  EXPECT_LT(worst, 1e-9);
}

TEST(WrinkleLift, JacobianMatchesFiniteDifferences) {
  for (double u : {-1.5, -0.2, 0.7})
    for (double v : {-0.9, 0.3, 1.8}) {
      const auto g = wrinkle_lift_uv(u, v);
      const double h = 1e-6;
      const Eigen::VectorXd du = (wrinkle_lift_uv(u + h, v).value - wrinkle_lift_uv(u - h, v).value) / (2 * h);
      const Eigen::VectorXd dv = (wrinkle_lift_uv(u, v + h).value - wrinkle_lift_uv(u, v - h).value) / (2 * h);
      EXPECT_LT((du - g.jac.col(0)).lpNorm<Eigen::Infinity>(), 1e-6);
      EXPECT_LT((dv - g.jac.col(1)).lpNorm<Eigen::Infinity>(), 1e-6);
    }
}

TEST(WrinkleLift, AgreesWithGeneralLift) {
  // general coordinates (x, y, z, p, q) against (x_1, x_2, z, y_1, y_2) = (q, x, z, p, y)
  for (double u : {-1.2, 0.0, 0.5})
    for (double v : {-0.6, 0.9}) {
      const auto G = wrinkle_lift(WrinkleModel{}, pt(u, v)).value;
      const auto g = wrinkle_lift_uv(u, v).value;
      EXPECT_NEAR(G[4], g[0], 1e-14);
      EXPECT_NEAR(G[0], g[1], 1e-14);
      EXPECT_NEAR(G[2], g[2], 1e-14);
      EXPECT_NEAR(G[3], g[3], 1e-14);
      EXPECT_NEAR(G[1], g[4], 1e-14);
    }
}

TEST(WrinkleLift, RankOneOnlyAtEquatorPoints) {
  EXPECT_EQ(numeric_rank(wrinkle_lift_uv(1, 0).jac), 1);
  EXPECT_EQ(numeric_rank(wrinkle_lift_uv(-1, 0).jac), 1);
  for (double u : linspace(-2, 2, 101))
    for (double v : linspace(-2, 2, 101)) {
      if ((std::abs(u) == 1) && v == 0) continue;
      EXPECT_EQ(numeric_rank(wrinkle_lift_uv(u, v).jac), 2) << u << " " << v;
    }
}

TEST(Loci, StandardCircle) {
  WrinkleModel w;
  w.grid = 201;
  const auto L = detect_singular_loci(w);
  ASSERT_FALSE(L.wrinkle.empty());
  for (const auto& p : L.wrinkle) EXPECT_LT(std::abs(p.norm() - 1), 2 * L.spacing);
  for (double th : linspace(0, 2 * M_PI, 90)) {
    double best = INFINITY;
    for (const auto& p : L.wrinkle) best = std::min(best, std::hypot(p[0] - std::cos(th), p[1] - std::sin(th)));
    EXPECT_LT(best, 2 * L.spacing);
  }
  ASSERT_EQ(L.swallowtail.size(), 2u);
  EXPECT_NEAR(L.swallowtail[0][0], -1, 1e-12);
  EXPECT_NEAR(L.swallowtail[1][0], 1, 1e-12);
  EXPECT_NEAR(L.swallowtail[0][1], 0, 1e-12);
}

TEST(Loci, InsideOutHyperbola) {
  WrinkleModel w;
  w.mode = WrinkleMode::InsideOut;
  const auto L = detect_singular_loci(w);
  ASSERT_FALSE(L.wrinkle.empty());
  for (const auto& p : L.wrinkle) EXPECT_LT(std::abs(p[0] * p[0] - p[1] * p[1] - 1), 1e-6);
}

TEST(Loci, EmbryoTransitions) {
  WrinkleModel w;
  w.mode = WrinkleMode::Embryo;
  w.tau = -0.5;
  EXPECT_TRUE(detect_singular_loci(w).wrinkle.empty());
  w.tau = 0;
  auto L = detect_singular_loci(w);
  ASSERT_EQ(L.wrinkle.size(), 1u);
  EXPECT_LT(L.wrinkle[0].norm(), 1e-12);
  w.tau = 0.5;
  L = detect_singular_loci(w);
  EXPECT_GT(L.wrinkle.size(), 20u);
  for (const auto& p : L.wrinkle) EXPECT_LT(std::abs(p.squaredNorm() - 0.5), 1e-6);
  ASSERT_EQ(L.swallowtail.size(), 2u);
  EXPECT_NEAR(std::abs(L.swallowtail[0][0]), std::sqrt(0.5), 1e-9);
}

TEST(Resolve, InsideOutSmallDelta) {
  const auto r = resolve_inside_out(0.01);
  EXPECT_EQ(r.rank_drops, 0);
  EXPECT_LT(r.max_pullback, 1e-9);
  EXPECT_EQ(r.max_outside_deviation, 0.0);
  ASSERT_TRUE(r.cls);
  EXPECT_EQ(r.cls->cls, ChartClass::Loose);
  EXPECT_NEAR(to_double(r.chart.action), psi_chord_length(0.01), 1e-6 * psi_chord_length(0.01));
}

TEST(Resolve, StandardLatticeHitsSwallowtails) {
  WrinkleModel w;
  w.grid = 201;
  EXPECT_EQ(lift_rank_drops(w), 2);
}

TEST(Resolve, Rejections) {
  EXPECT_THROW(resolve_inside_out(0.6), DomainError);
  EXPECT_THROW(resolve_inside_out(0.0), DomainError);
}

TEST(Resolve, PairOfWrinkles) {
  const auto r = resolve_pair(0.01, 2, 200);
  EXPECT_EQ(r.rank_drops, 0);
  EXPECT_LT(r.max_pullback, 1e-9);
  WrinkleModel raw;
  raw.mode = WrinkleMode::Pair;
  raw.extent = 4;
  raw.grid = 201;
  EXPECT_EQ(detect_singular_loci(raw).swallowtail.size(), 4u);
}

TEST(Saucer, Slice) {
  const auto f = saucer_slice(5001);
  ASSERT_TRUE(validate_front(f).ok());
  // r = 0 at the middle sample of each arc
  EXPECT_NEAR(f.arcs[0].x[2500], 0, 1e-12);
  EXPECT_NEAR(f.arcs[0].z[2500], 1, 1e-12);
  EXPECT_NEAR(f.arcs[1].z[2500], -1, 1e-12);
  const auto cs = cusp_list(f);
  ASSERT_EQ(cs.size(), 2u);
  for (const auto& c : cs) EXPECT_NEAR(std::abs(c.x), 1, 1e-15);
  EXPECT_LT(legendrian_residual(lift_front(f)), 1e-6);
}

TEST(Saucer, HigherDimensionalSheet) {
  const auto s = saucer_sheet(2, 100);
  ASSERT_EQ(s.model, ContactModel::standard(2));
  for (const auto& p : s.points) {
    const double r2 = p[0] * p[0] + p[4] * p[4];
    EXPECT_NEAR(std::abs(p[2]), std::pow(std::max(0.0, 1 - r2), 1.5), 1e-9);
  }
  EXPECT_LT(legendrian_residual(s), 1e-3);
}
