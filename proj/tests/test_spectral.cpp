#include <doctest.h>

#include "pev/spectral.hpp"
#include "test_support.hpp"

using namespace pev;
using namespace pev::testing;

TEST_CASE("degenerate diagonal input clusters into two projectors") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  SpectralDecomposition sd = spectral_decompose(Operator(std::move(m)), 1e-8);
  REQUIRE(sd.eigenvalues.size() == 2);
  CHECK(sd.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(sd.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(sd.projectors[0].trace().real() == doctest::Approx(2.0));  // rank 2
  CHECK(sd.projectors[1].trace().real() == doctest::Approx(1.0));  // rank 1
}

TEST_CASE("pauli x decomposes into the +- projectors") {
  SpectralDecomposition sd = spectral_decompose(pauli_x());
  REQUIRE(sd.eigenvalues.size() == 2);
  CHECK(sd.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(sd.eigenvalues[1] == doctest::Approx(1.0));
  // P(+1) = |+><+|
  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK((sd.projectors[1].matrix() - plus).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("random hermitian operators reconstruct within 1e-10") {
  auto rng = make_rng(23);
  for (int dim : {2, 6, 17, 32}) {
    Operator a = random_hermitian(rng, dim);
    SpectralDecomposition sd = spectral_decompose(a);
    CHECK((sd.reconstruct() - a).max_abs() <= 1e-10);
    CHECK(sd.projector_residual() <= 1e-10);
    // strictly increasing after clustering
    for (std::size_t i = 1; i < sd.eigenvalues.size(); ++i) {
      CHECK(sd.eigenvalues[i] > sd.eigenvalues[i - 1]);
    }
  }
}

TEST_CASE("non-hermitian input is rejected") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(spectral_decompose(Operator(std::move(m))), NotHermitian);
}

TEST_CASE("cluster tolerance merges near-degenerate pairs") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0 + 1e-12;
  SpectralDecomposition merged = spectral_decompose(Operator(m), 1e-9);
  CHECK(merged.eigenvalues.size() == 1);
  SpectralDecomposition split = spectral_decompose(Operator(m), 1e-14);
  CHECK(split.eigenvalues.size() == 2);
}
