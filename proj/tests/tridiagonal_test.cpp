#include <doctest.h>

#include "support.hpp"
#include "wavelab/tridiagonal.hpp"

using namespace wavelab;

namespace {

SymmetricTridiagonal<double> random_tridiagonal(testing::Gen& g, Index n) {
  SymmetricTridiagonal<double> t{VecX<double>(n), VecX<double>(n - 1)};
  for (Index i = 0; i < n; ++i) t.diagonal[i] = g.uniform(-10, 10);
  for (Index i = 0; i + 1 < n; ++i) t.off_diagonal[i] = g.uniform(-3, 3);
  return t;
}

}  // namespace

TEST_CASE("dense form is symmetric bitwise") {
  testing::Gen g(1);
  const auto t = random_tridiagonal(g, 50);
  const MatX<double> m = t.to_dense();
  CHECK((m.array() == m.transpose().array()).all());
  const VecX<double> x = VecX<double>::LinSpaced(50, -1, 1);
  CHECK((t.apply(x) - m * x).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("sturm count matches the spectrum") {
  testing::Gen g(2);
  const auto t = random_tridiagonal(g, 40);
  const VecX<double> ev = testing::oracle::tridiagonal_eigenvalues(t.diagonal, t.off_diagonal);
  for (Index k = 0; k + 1 < ev.size(); ++k) CHECK(count_below(t, 0.5 * (ev[k] + ev[k + 1])) == k + 1);
  CHECK(count_below(t, ev[0] - 1) == 0);
  CHECK(count_below(t, ev[39] + 1) == 40);
}

TEST_CASE("property: lowest eigenpairs agree with Eigen's solver") {
  testing::for_all(30, 77, [](testing::Gen& g, int) {
    const Index n = g.integer(5, 200);
    const auto t = random_tridiagonal(g, n);
    const Index k = g.integer(1, std::min<long>(n, 6));
    const auto pairs = lowest_eigenpairs(t, k);
    Eigen::SelfAdjointEigenSolver<MatX<double>> es(t.to_dense());
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    for (Index j = 0; j < k; ++j) {
      CHECK(std::abs(pairs.values[j] - es.eigenvalues()[j]) <= 1e-12 * scale);
      const VecX<double> v = pairs.vectors.col(j);
      CHECK((t.apply(v) - pairs.values[j] * v).norm() < 1e-9 * scale);
      CHECK(std::abs(std::abs(v.dot(es.eigenvectors().col(j))) - 1) < 1e-8);
    }
    const MatX<double> gram = pairs.vectors.transpose() * pairs.vectors;
    CHECK((gram - MatX<double>::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-8);
  });
}

TEST_CASE("degenerate spectrum yields orthonormal vectors") {
  // Two decoupled identical blocks: every eigenvalue is doubly degenerate.
  SymmetricTridiagonal<double> t{VecX<double>::Constant(10, 2.0), VecX<double>::Constant(9, -1.0)};
  t.off_diagonal[4] = 0.0;
  const auto pairs = lowest_eigenpairs(t, 4);
  CHECK(pairs.values[0] == doctest::Approx(pairs.values[1]).epsilon(1e-12));
  const MatX<double> gram = pairs.vectors.transpose() * pairs.vectors;
  CHECK((gram - MatX<double>::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("invalid requests are rejected") {
  SymmetricTridiagonal<double> t{VecX<double>::Ones(5), VecX<double>::Zero(4)};
  CHECK_THROWS_AS(lowest_eigenpairs(t, 0), PreconditionError);
  CHECK_THROWS_AS(lowest_eigenpairs(t, 6), PreconditionError);
  t.diagonal[2] = std::nan("");
  CHECK_THROWS_AS(lowest_eigenpairs(t, 1), DomainError);
  SymmetricTridiagonal<double> bad{VecX<double>::Ones(5), VecX<double>::Zero(3)};
  CHECK_THROWS_AS(lowest_eigenpairs(bad, 1), PreconditionError);
}
