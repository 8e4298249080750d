#include "bks/linalg.hpp"
#include "bks/tensor.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace {

using bks::DenseTensor3;
using bks::SparseTensor3;
using Eigen::MatrixXd;

TEST(Ttm, IdentityFactorsLeaveTensorUnchanged) {
  std::vector<bks::Entry> e;
  for (std::uint32_t i = 0; i < 2; ++i)
    for (std::uint32_t j = 0; j < 2; ++j)
      for (std::uint32_t k = 0; k < 2; ++k) e.push_back({{i, j, k}, 1.0});
  const SparseTensor3 a({2, 2, 2}, e);
  const MatrixXd id = MatrixXd::Identity(2, 2);
  EXPECT_EQ(bks::ttm(a, id, id, id), a.to_dense());
  EXPECT_EQ(bks::ttm(a, bks::left_factors(id, id, id)), a.to_dense());
}

TEST(Ttm, SingleEntryLinearity) {
  const SparseTensor3 a({2, 1, 1}, {{{0, 0, 0}, 3.0}});
  MatrixXd ut(1, 2);
  ut << 2.0, 0.0;
  const auto b = bks::ttm(a, bks::ModeFactors{{bks::ModeFactor::left(ut), {}, {}}});
  ASSERT_EQ(b.dims(), (bks::Dims3{1, 1, 1}));
  EXPECT_DOUBLE_EQ(b(0, 0, 0), 6.0);
}

TEST(Ttm, MatchesTripleSumOracle) {
  std::mt19937_64 rng(11);
  const auto a = bks::oracle::random_sparse({3, 4, 5}, 10, rng);
  const MatrixXd x = bks::random_gaussian(3, 2, rng);
  const MatrixXd y = bks::random_gaussian(4, 2, rng);
  const MatrixXd z = bks::random_gaussian(5, 2, rng);
  const auto ref = bks::oracle::triple_sum(a.to_dense(), x, y, z);
  EXPECT_LE(bks::oracle::relative_error(bks::ttm(a, x, y, z), ref), 1e-12);
}

TEST(Ttm, PartialModesMatchOracle) {
  std::mt19937_64 rng(12);
  const auto a = bks::oracle::random_sparse({4, 3, 5}, 25, rng);
  const MatrixXd y = bks::random_gaussian(3, 2, rng);
  const MatrixXd z = bks::random_gaussian(5, 3, rng);
  const MatrixXd i4 = MatrixXd::Identity(4, 4);
  const MatrixXd i3 = MatrixXd::Identity(3, 3);
  const MatrixXd i5 = MatrixXd::Identity(5, 5);
  const auto ref23 = bks::oracle::triple_sum(a.to_dense(), i4, y, z);
  EXPECT_LE(bks::oracle::relative_error(
                bks::ttm(a, bks::ModeFactors{{{}, bks::ModeFactor::right(y), bks::ModeFactor::right(z)}}), ref23),
            1e-12);
  const auto ref3 = bks::oracle::triple_sum(a.to_dense(), i4, i3, z);
  EXPECT_LE(bks::oracle::relative_error(bks::ttm(a, bks::ModeFactors{{{}, {}, bks::ModeFactor::right(z)}}), ref3),
            1e-12);
  const MatrixXd yt = y.transpose();
  const auto ref2 = bks::oracle::triple_sum(a.to_dense(), i4, y, i5);
  EXPECT_LE(bks::oracle::relative_error(bks::ttm(a, bks::ModeFactors{{{}, bks::ModeFactor::left(yt), {}}}), ref2),
            1e-12);
}

TEST(Ttm, DimensionMismatchNamesMode) {
  const SparseTensor3 a({3, 4, 5}, {{{0, 0, 0}, 1.0}});
  const MatrixXd bad = MatrixXd::Identity(3, 3);
  try {
    bks::ttm(a, bks::ModeFactors{{{}, bks::ModeFactor::right(bad), {}}});
    FAIL() << "expected a dimension error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("mode 1"), std::string::npos);
  }
}

TEST(Ttm, ThreadCountDoesNotChangeBits) {
  std::mt19937_64 rng(13);
  const auto a = bks::oracle::random_sparse({40, 30, 20}, 20000, rng);
  const MatrixXd y = bks::random_gaussian(30, 3, rng);
  const MatrixXd z = bks::random_gaussian(20, 4, rng);
  const MatrixXd x = bks::random_gaussian(40, 2, rng);
  bks::set_thread_count(1);
  const auto serial = bks::ttm(a, bks::ModeFactors{{{}, bks::ModeFactor::right(y), bks::ModeFactor::right(z)}});
  const auto serial2 = bks::ttm(a, bks::ModeFactors{{bks::ModeFactor::right(x), {}, bks::ModeFactor::right(z)}});
  bks::set_thread_count(4);
  const auto par = bks::ttm(a, bks::ModeFactors{{{}, bks::ModeFactor::right(y), bks::ModeFactor::right(z)}});
  const auto par2 = bks::ttm(a, bks::ModeFactors{{bks::ModeFactor::right(x), {}, bks::ModeFactor::right(z)}});
  bks::set_thread_count(1);
  EXPECT_EQ(serial, par);
  EXPECT_EQ(serial2, par2);
}

TEST(Multilinear, IdentityAndOracle) {
  std::mt19937_64 rng(21);
  const auto f = bks::oracle::random_dense({2, 2, 2}, rng);
  const MatrixXd id = MatrixXd::Identity(2, 2);
  EXPECT_EQ(bks::multilinear_multiply(f, bks::left_factors(id, id, id)), f);

  const auto c = bks::oracle::random_dense({3, 3, 3}, rng);
  const MatrixXd u = bks::random_gaussian(3, 2, rng);
  const MatrixXd v = bks::random_gaussian(3, 4, rng);
  const MatrixXd w = bks::random_gaussian(3, 3, rng);
  const auto ref = bks::oracle::triple_sum(c, u, v, w);
  EXPECT_LE(bks::oracle::relative_error(bks::multilinear_multiply(c, bks::right_factors(u, v, w)), ref),
            1e-12);
}

TEST(Multilinear, OrthogonalInvariance) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = bks::oracle::random_dense({3, 4, 5}, rng);
    const MatrixXd q1 = bks::random_orthonormal(3, 3, rng);
    const MatrixXd q2 = bks::random_orthonormal(4, 4, rng);
    const MatrixXd q3 = bks::random_orthonormal(5, 5, rng);
    const auto b = bks::multilinear_multiply(f, bks::left_factors(q1, q2, q3));
    EXPECT_NEAR(b.norm(), f.norm(), 1e-12 * f.norm());
  }
}

TEST(Contract, FullContractionIsSquaredNorm) {
  std::vector<double> v(8);
  for (int i = 0; i < 8; ++i) v[i] = i + 1;
  const DenseTensor3 a({2, 2, 2}, v);
  EXPECT_DOUBLE_EQ(bks::inner_product(a, a), 204.0);
  EXPECT_DOUBLE_EQ(std::get<double>(bks::contract(a, a, {0, 1, 2})), 204.0);
}

TEST(Contract, IdentitySlabsGiveDiagonalOfSliceNorms) {
  DenseTensor3 a({2, 2, 2});
  a(0, 0, 0) = 1.0;
  a(0, 1, 1) = 1.0;
  a(1, 0, 1) = 1.0;  // slice 0: one entry, slice 1: two entries
  const auto d = bks::contract_except(a, a, 0);
  EXPECT_DOUBLE_EQ(d(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(d(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(d(0, 1), 0.0);
}

TEST(Contract, PartialContractionsMatchOracle) {
  std::mt19937_64 rng(31);
  for (std::size_t mode = 0; mode < 3; ++mode) {
    bks::Dims3 db{2, 3, 4};
    db[mode] = 5;
    const auto a = bks::oracle::random_dense({2, 3, 4}, rng);
    const auto b = bks::oracle::random_dense(db, rng);
    const MatrixXd ref = bks::oracle::partial_contraction(a, b, mode);
    EXPECT_LE((bks::contract_except(a, b, mode) - ref).norm(), 1e-12 * ref.norm()) << mode;
  }
}

TEST(Contract, MismatchedModesThrow) {
  const DenseTensor3 a({2, 3, 4}), b({2, 2, 4});
  EXPECT_THROW(bks::contract_except(a, b, 0), std::invalid_argument);
  EXPECT_THROW(bks::inner_product(a, b), std::invalid_argument);
}

TEST(Contract, InnerProductEqualsUnfoldedMatrixProduct) {
  std::mt19937_64 rng(32);
  const auto a = bks::oracle::random_dense({3, 4, 5}, rng);
  const auto b = bks::oracle::random_dense({3, 4, 5}, rng);
  const double via_unfold = (bks::unfold(a, 0).array() * bks::unfold(b, 0).array()).sum();
  EXPECT_NEAR(bks::inner_product(a, b), via_unfold, 1e-12 * a.norm() * b.norm());
}

TEST(Unfold, RoundTripIsExact) {
  std::mt19937_64 rng(41);
  const auto a = bks::oracle::random_dense({3, 4, 5}, rng);
  for (std::size_t mode = 0; mode < 3; ++mode) {
    EXPECT_EQ(bks::fold(bks::unfold(a, mode), mode, a.dims()), a) << mode;
  }
}

TEST(Unfold, DocumentedColumnOrder) {
  DenseTensor3 a({2, 2, 2});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) a(i, j, k) = static_cast<double>(i + 2 * j + 4 * k);
  // Column c = j + 2k holds fiber a(:, j, k).
  MatrixXd expected(2, 4);
  expected << 0, 2, 4, 6,
              1, 3, 5, 7;
  EXPECT_EQ(bks::unfold(a, 0), expected);
  // mode 1: column k + 2i; mode 2: column i + 2j.
  MatrixXd e1(2, 4);
  e1 << 0, 4, 1, 5,
        2, 6, 3, 7;
  EXPECT_EQ(bks::unfold(a, 1), e1);
  MatrixXd e2(2, 4);
  e2 << 0, 1, 2, 3,
        4, 5, 6, 7;
  EXPECT_EQ(bks::unfold(a, 2), e2);
}

TEST(Unfold, RankOneTensorHasUnitRankUnfoldings) {
  DenseTensor3 a({3, 4, 5});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 5; ++k) a(i, j, k) = (i + 1.0) * (j - 1.5) * (0.5 * k + 1.0);
  for (std::size_t mode = 0; mode < 3; ++mode) {
    Eigen::FullPivLU<MatrixXd> lu(bks::unfold(a, mode));
    lu.setThreshold(1e-12);
    EXPECT_EQ(lu.rank(), 1) << mode;
  }
}

TEST(Unfold, FoldShapeMismatchThrows) {
  EXPECT_THROW(bks::fold(MatrixXd::Zero(3, 5), 0, {3, 2, 2}), std::invalid_argument);
}

TEST(TriUnfold, KeepsUpperTriangularFibers) {
  std::mt19937_64 rng(51);
  EXPECT_EQ(bks::triunfold3(bks::oracle::random_dense({2, 2, 3}, rng)).cols(), 3);
  EXPECT_EQ(bks::triunfold3(bks::oracle::random_dense({4, 4, 3}, rng)).cols(), 10);
  EXPECT_THROW(bks::triunfold3(DenseTensor3({2, 3, 3})), std::invalid_argument);
}

TEST(TriUnfold, SymmetricReconstruction) {
  std::mt19937_64 rng(52);
  const auto x = bks::oracle::random_sym12(3, 4, rng);
  EXPECT_EQ(bks::trifold3(bks::triunfold3(x), 3), x);
  // Column order is unfold(., 2) restricted to i <= j.
  const MatrixXd full = bks::unfold(x, 2);
  const MatrixXd tri = bks::triunfold3(x);
  EXPECT_EQ(tri.col(0), full.col(0));      // (0,0)
  EXPECT_EQ(tri.col(1), full.col(0 + 3));  // (0,1)
  EXPECT_EQ(tri.col(2), full.col(1 + 3));  // (1,1)
}

TEST(Symmetry, SymmetrizeAveragesPairs) {
  const SparseTensor3 a({2, 2, 1}, {{{0, 1, 0}, 2.0}});
  EXPECT_FALSE(bks::check_sym12(a));
  const auto s = bks::symmetrize12(a);
  EXPECT_TRUE(s.sym12());
  ASSERT_EQ(s.nnz(), 2u);
  EXPECT_DOUBLE_EQ(s.at(0, 1, 0), 1.0);
  EXPECT_DOUBLE_EQ(s.at(1, 0, 0), 1.0);
}

TEST(Symmetry, SymmetricInputUnchanged) {
  std::mt19937_64 rng(61);
  const auto a = SparseTensor3::from_dense(bks::oracle::random_sym12(4, 3, rng));
  EXPECT_TRUE(bks::check_sym12(a));
  EXPECT_EQ(bks::symmetrize12(a), a);
}

TEST(Symmetry, RandomTensorsBecomeSymmetric) {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 10; ++t) {
    const auto a = bks::oracle::random_sparse({6, 6, 4}, 30, rng);
    EXPECT_TRUE(bks::check_sym12(bks::symmetrize12(a)));
  }
  EXPECT_THROW(bks::symmetrize12(SparseTensor3({2, 3, 1}, {})), std::invalid_argument);
}

TEST(Symmetry, TtmWithSharedFactorKeepsSymmetry) {
  std::mt19937_64 rng(63);
  const auto a = SparseTensor3::from_dense(bks::oracle::random_sym12(5, 4, rng), true);
  const MatrixXd u = bks::random_gaussian(5, 3, rng);
  const MatrixXd w = bks::random_gaussian(4, 2, rng);
  const auto f = bks::ttm(a, u, u, w);
  double asym = 0.0;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) asym = std::max(asym, std::abs(f(i, j, k) - f(j, i, k)));
  EXPECT_LE(asym, 1e-12 * f.norm());
}

TEST(Normalize, FrobeniusSingleEntry) {
  const SparseTensor3 a({2, 2, 1}, {{{1, 1, 0}, 5.0}});
  const auto n = bks::normalize_slices(a, bks::SliceNormalization::Frobenius);
  EXPECT_DOUBLE_EQ(n.at(1, 1, 0), 1.0);
}

TEST(Normalize, SpectralScaledIdentity) {
  const SparseTensor3 a({2, 2, 2}, {{{0, 0, 0}, 2.0}, {{1, 1, 0}, 2.0}}, true);
  const auto n = bks::normalize_slices(a, bks::SliceNormalization::Spectral);
  EXPECT_NEAR(n.at(0, 0, 0), 1.0, 1e-12);
  EXPECT_NEAR(n.at(1, 1, 0), 1.0, 1e-12);
  EXPECT_EQ(n.nnz(), 2u);  // the empty slice stays empty
}

TEST(Normalize, SpectralRadiusBecomesOne) {
  std::mt19937_64 rng(71);
  const auto a = SparseTensor3::from_dense(bks::oracle::random_sym12(8, 3, rng), true);
  const auto n = bks::normalize_slices(a, bks::SliceNormalization::Spectral);
  const auto d = n.to_dense();
  for (std::size_t k = 0; k < 3; ++k) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(MatrixXd(d.slice(k)));
    EXPECT_NEAR(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0, 1e-8) << k;
  }
}

TEST(Normalize, SpectralNeedsSymmetricSlices) {
  const SparseTensor3 a({2, 2, 1}, {{{0, 1, 0}, 1.0}});
  EXPECT_THROW(bks::normalize_slices(a, bks::SliceNormalization::Spectral), std::invalid_argument);
}

TEST(SparseTensor, DuplicatesAreSummedAndSorted) {
  const SparseTensor3 a({3, 3, 3}, {{{2, 0, 0}, 1.0}, {{0, 1, 2}, 1.5}, {{2, 0, 0}, 2.0}});
  ASSERT_EQ(a.nnz(), 2u);
  EXPECT_EQ(a.index(0), (bks::Index3{0, 1, 2}));
  EXPECT_DOUBLE_EQ(a.at(2, 0, 0), 3.0);
  EXPECT_THROW(SparseTensor3({2, 2, 2}, {{{2, 0, 0}, 1.0}}), std::invalid_argument);
}

TEST(TnsIo, WriteThenReadReproducesEntries) {
  std::mt19937_64 rng(81);
  const auto a = bks::oracle::random_sparse({7, 5, 6}, 40, rng);
  std::stringstream ss;
  bks::write_tns(ss, a);
  const auto b = bks::read_tns(ss);
  EXPECT_EQ(a, b);
}

TEST(TnsIo, MalformedLineReportsLineNumber) {
  std::stringstream ss("# dims 2 2 2\n1 1 1 0.5\n1 2 x 3\n");
  try {
    bks::read_tns(ss);
    FAIL() << "expected a parse error";
  } catch (const bks::TnsParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::stringstream zero("0 1 1 1.0\n");
  EXPECT_THROW(bks::read_tns(zero), bks::TnsParseError);
}

TEST(TnsIo, DimsInferredWithoutHeader) {
  std::stringstream ss("1 1 1 1.0\n3 2 4 2.0\n3 2 4 1.0\n");
  const auto a = bks::read_tns(ss);
  EXPECT_EQ(a.dims(), (bks::Dims3{3, 2, 4}));
  EXPECT_DOUBLE_EQ(a.at(2, 1, 3), 3.0);
}

}  // namespace
