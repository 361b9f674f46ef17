#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <apxxx/linalg.hpp>

using namespace apxxx;

TEST_CASE("polynomial evaluation and derivative") {
  Polynomial p({Cx(1.0), Cx(0.0), Cx(3.0)});  // 1 + 3 x^2
  CHECK(p.eval(2.0) == Cx(13.0));
  CHECK(p.degree() == 2);
  Polynomial dp = p.derivative();
  CHECK(dp.eval(2.0) == Cx(12.0));
  CHECK(Polynomial{}.degree() == -1);
}

TEST_CASE("interpolation through equal values gives a constant") {
  const Cx eta(0.0, 1.0);
  Polynomial p = poly_from_samples({Cx(0.0), Cx(1.0)}, {eta, eta});
  CHECK(p.degree() == 0);
  CHECK(std::abs(p.eval(Cx(17.0, -3.0)) - eta) < 1e-14);
}

TEST_CASE("interpolation reproduces a quadratic") {
  Polynomial q({Cx(2.0), Cx(-1.0), Cx(0.5, 0.5)});
  std::vector<Cx> nodes{Cx(0.0), Cx(1.0), Cx(-2.0, 1.0)};
  std::vector<Cx> values;
  for (Cx x : nodes) values.push_back(q.eval(x));
  Polynomial p = poly_from_samples(nodes, values);
  REQUIRE(p.coeffs.size() >= 3);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(p.coeffs[k] - q.coeffs[k]) < 1e-13);
}

TEST_CASE("determinant by LU") {
  Mat m(2, 2);
  m << Cx(1.0), Cx(2.0), Cx(3.0), Cx(4.0);
  CHECK(std::abs(det(m) - Cx(-2.0)) < 1e-14);
}

TEST_CASE("hermitian eigensolver orders values ascending") {
  Mat h(2, 2);
  h << Cx(0.0), Cx(1.0), Cx(1.0), Cx(0.0);
  HermitianEigen e = eig_hermitian(h);
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  CHECK((e.vectors.adjoint() * e.vectors - Mat::Identity(2, 2)).norm() < 1e-13);
}

TEST_CASE("hermitian eigensolver rejects non-hermitian input") {
  Mat h(2, 2);
  h << Cx(0.0), Cx(1.0), Cx(2.0), Cx(0.0);
  CHECK_THROWS_AS(eig_hermitian(h), Error);
}

TEST_CASE("check_finite throws on NaN") {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = Cx(std::nan(""), 0.0);
  CHECK_THROWS_AS(check_finite(m), Error);
}

TEST_CASE("kron dimensions and block structure") {
  Mat a(2, 2), b(3, 3);
  a << Cx(1.0), Cx(2.0), Cx(0.0), Cx(1.0);
  b = Mat::Identity(3, 3) * Cx(2.0);
  Mat k = kron(a, b);
  REQUIRE(k.rows() == 6);
  CHECK(std::abs(k(0, 0) - Cx(2.0)) < 1e-15);
  CHECK(std::abs(k(0, 3) - Cx(4.0)) < 1e-15);
}

TEST_CASE("embed single-site operator at N=1 is the operator itself") {
  Mat sz(2, 2);
  sz << Cx(0.5), Cx(0.0), Cx(0.0), Cx(-0.5);
  Mat e = embed_site_operator(sz, 0, {2});
  CHECK((e - sz).norm() == 0.0);
}

TEST_CASE("embed respects site ordering with site 0 fastest") {
  Mat x(2, 2);
  x << Cx(0.0), Cx(1.0), Cx(1.0), Cx(0.0);
  Mat e0 = embed_site_operator(x, 0, {2, 2});
  Mat e1 = embed_site_operator(x, 1, {2, 2});
  CHECK((e0 * e1 - e1 * e0).norm() < 1e-15);
  CHECK((e0 - kron(Mat::Identity(2, 2), x)).norm() < 1e-15);
  CHECK((e1 - kron(x, Mat::Identity(2, 2))).norm() < 1e-15);
}
