#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "rid/matrix.hpp"
#include "rid/matrix_io.hpp"
#include "rid/random.hpp"
#include "rid/spectral_norm.hpp"

using namespace rid;
using namespace std::complex_literals;

TEST(Philox, KnownAnswerZeroKeyZeroCounter) {
  const auto w = philox::generate({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(w[0], 0x6627e8d5u);
  EXPECT_EQ(w[1], 0xe169c58du);
  EXPECT_EQ(w[2], 0xbc57ac4cu);
  EXPECT_EQ(w[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto w = philox::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                  {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(w[0], 0x408f276du);
  EXPECT_EQ(w[1], 0x41c83b0eu);
  EXPECT_EQ(w[2], 0xa20bc7c6u);
  EXPECT_EQ(w[3], 0x6d5451fdu);
}

TEST(RngState, StreamsDiffer) {
  const RngState a{42, 0};
  EXPECT_NE(a.words(0), a.split(1).words(0));
  EXPECT_NE(a.split(1).words(0), a.split(2).words(0));
  EXPECT_EQ(a.split(7), a.split(7));
}

TEST(Matmul, IdentityLeavesMatrixUnchanged) {
  const DenseMatrix x = gaussian_complex_matrix(3, 4, RngState{1, 0});
  EXPECT_EQ(matmul(DenseMatrix::identity(3), x), x);
}

TEST(Matmul, HandComputedComplexProduct) {
  const auto a = DenseMatrix::from_rows({{1.0, 1i}, {0.0, 1.0}});
  const auto b = DenseMatrix::from_rows({{1.0, 0.0}, {1i, 1.0}});
  const auto want = DenseMatrix::from_rows({{0.0, 1i}, {1i, 1.0}});
  EXPECT_EQ(matmul(a, b), want);
}

TEST(Matmul, MatchesNaiveTripleLoopExactly) {
  const DenseMatrix a = gaussian_complex_matrix(7, 5, RngState{3, 1});
  const DenseMatrix b = gaussian_complex_matrix(5, 3, RngState{3, 2});
  EXPECT_EQ(max_abs_diff(matmul(a, b), oracle::naive_matmul(a, b)), 0.0);
}

TEST(Matmul, DimensionMismatchThrows) {
  EXPECT_THROW(matmul(DenseMatrix(2, 3), DenseMatrix(2, 3)), ContractViolation);
}

TEST(Matmul, WorkerCountInvariant) {
  const DenseMatrix a = gaussian_complex_matrix(33, 17, RngState{5, 0});
  const DenseMatrix b = gaussian_complex_matrix(17, 29, RngState{5, 1});
  const DenseMatrix c1 = matmul(a, b, Workers{1});
  EXPECT_EQ(matmul(a, b, Workers{3}), c1);
  EXPECT_EQ(matmul(a, b, Workers{8}), c1);
}

TEST(Matmul, AssociativeOnRandomTriples) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const RngState rng{100 + s, 0};
    const auto a = gaussian_complex_matrix(4 + s % 5, 6, rng.split(1));
    const auto b = gaussian_complex_matrix(6, 3 + s % 4, rng.split(2));
    const auto c = gaussian_complex_matrix(b.cols(), 5, rng.split(3));
    const auto left = matmul(matmul(a, b), c);
    const auto right = matmul(a, matmul(b, c));
    EXPECT_LE(frobenius_norm(subtract(left, right)), 1e-12 * frobenius_norm(left));
  }
}

TEST(FrobeniusNorm, TrivialCases) {
  EXPECT_EQ(frobenius_norm(DenseMatrix(3, 4)), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(DenseMatrix::identity(2)), std::sqrt(2.0));
}

TEST(FrobeniusNorm, MatchesElementwiseOracle) {
  const auto a = gaussian_complex_matrix(10, 10, RngState{9, 9});
  long double s = 0.0L;
  for (std::size_t j = 0; j < 10; ++j)
    for (std::size_t i = 0; i < 10; ++i) s += std::norm(std::complex<long double>(a(i, j)));
  const double want = static_cast<double>(std::sqrt(s));
  EXPECT_LE(std::abs(frobenius_norm(a) - want) / want, 1e-15);
}

TEST(SpectralNorm, DiagonalMatrix) {
  const auto a = DenseMatrix::from_rows({{3.0, 0.0}, {0.0, -4i}});
  EXPECT_NEAR(spectral_norm_estimate(a, 100, 1e-12, RngState{1, 0}), 4.0, 1e-10);
}

TEST(SpectralNorm, RankOneOuterProduct) {
  const auto u = gaussian_complex_matrix(9, 1, RngState{2, 0});
  const auto v = gaussian_complex_matrix(6, 1, RngState{2, 1});
  const auto a = matmul(u, adjoint(v));
  const double want = frobenius_norm(u) * frobenius_norm(v);
  EXPECT_NEAR(spectral_norm_estimate(a, 50, 1e-12, RngState{3, 0}), want, 1e-12 * want);
}

TEST(SpectralNorm, MatchesDenseSvdOracle) {
  const auto a = gaussian_complex_matrix(50, 30, RngState{77, 0});
  const double sigma1 = oracle::singular_values(a).front();
  const double est = spectral_norm_estimate(a, 500, 1e-9, RngState{77, 1});
  EXPECT_LE(std::abs(est - sigma1) / sigma1, 1e-6);
}

TEST(SpectralNorm, BoundedByFrobeniusAndConsistent) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto a = gaussian_complex_matrix(12 + s, 8 + 2 * s, RngState{s, 4});
    const double two = spectral_norm_estimate(a, 500, 1e-10, RngState{s, 5});
    EXPECT_LE(two, frobenius_norm(a) * (1 + 1e-9));
    const auto x = gaussian_complex_matrix(a.cols(), 1, RngState{s, 6});
    EXPECT_LE(frobenius_norm(matmul(a, x)), two * frobenius_norm(x) * (1 + 1e-6));
  }
}

TEST(SpectralNorm, ContractViolations) {
  EXPECT_THROW(spectral_norm_estimate(DenseMatrix(0, 3), 10, 1e-6, {}), ContractViolation);
  EXPECT_THROW(spectral_norm_estimate(DenseMatrix::identity(2), 0, 1e-6, {}), ContractViolation);
  EXPECT_THROW(spectral_norm_estimate(DenseMatrix::identity(2), 5, 0.0, {}), ContractViolation);
}

TEST(GaussianMatrix, DeterministicPerSeedAndStream) {
  const auto a = gaussian_complex_matrix(8, 8, RngState{42, 0});
  const auto b = gaussian_complex_matrix(8, 8, RngState{42, 0});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, gaussian_complex_matrix(8, 8, RngState{42, 1}));
}

TEST(GaussianMatrix, FirstMomentsMatchUnitVarianceComplexNormal) {
  const auto a = gaussian_complex_matrix(256, 256, RngState{2024, 0});
  Complex mean = 0.0;
  double power = 0.0;
  for (const Complex& z : a.data()) {
    mean += z;
    power += std::norm(z);
  }
  const double count = static_cast<double>(a.size());
  EXPECT_LE(std::abs(mean / count), 4.0 / std::sqrt(count));
  EXPECT_GE(power / count, 0.95);
  EXPECT_LE(power / count, 1.05);
}

TEST(GaussianMatrix, EntryDependsOnlyOnCoordinates) {
  const RngState rng{5, 5};
  const auto big = gaussian_complex_matrix(16, 9, rng, Workers{4});
  const auto small = gaussian_complex_matrix(7, 3, rng, Workers{1});
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(big(i, j), small(i, j));
  EXPECT_EQ(gaussian_complex_matrix(16, 9, rng, Workers{1}), big);
  EXPECT_THROW(gaussian_complex_matrix(0, 3, rng), ContractViolation);
}

TEST(MatrixIo, ByteLayout) {
  DenseMatrix a(1, 2);
  a(0, 0) = Complex(1.0, -2.0);
  a(0, 1) = Complex(0.5, 0.0);
  std::ostringstream os;
  write_matrix(os, a);
  const std::string bytes = os.str();
  ASSERT_EQ(bytes.size(), 4u + 16u + 2u * 16u);
  EXPECT_EQ(bytes.substr(0, 4), "RIDM");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1u);   // rows, little-endian
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 2u);  // cols
  // 1.0 = 0x3FF0000000000000, little-endian: last byte 0x3F
  EXPECT_EQ(static_cast<unsigned char>(bytes[20 + 7]), 0x3Fu);
  EXPECT_EQ(static_cast<unsigned char>(bytes[20 + 6]), 0xF0u);
  // -2.0 = 0xC000000000000000
  EXPECT_EQ(static_cast<unsigned char>(bytes[28 + 7]), 0xC0u);
}

TEST(MatrixIo, RoundTripIsBitwise) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto a = gaussian_complex_matrix(1 + 3 * s, 2 + s, RngState{s, 0});
    std::stringstream ss;
    write_matrix(ss, a);
    EXPECT_EQ(read_matrix(ss), a);
  }
}

TEST(MatrixIo, RejectsBadInput) {
  std::istringstream bad_magic("XXXX0000000000000000");
  EXPECT_THROW(read_matrix(bad_magic), IoError);
  std::ostringstream os;
  write_matrix(os, gaussian_complex_matrix(3, 3, RngState{}));
  std::istringstream truncated(os.str().substr(0, 40));
  EXPECT_THROW(read_matrix(truncated), IoError);
  EXPECT_THROW(read_matrix(std::filesystem::path("/nonexistent/x.ridm")), IoError);
}
