#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tango/simil.hpp"

namespace tango {
namespace {

TEST(FingerprintTest, EthanolEnvironments) {
  const Molecule m = parse_smiles("CCO");
  EXPECT_EQ(oracle::count_environments(m, 2), 8u);
  EXPECT_EQ(morgan_fingerprint(m, 2, 2048).popcount(), 8u);
}

TEST(FingerprintTest, PopcountBoundedByEnvironments) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Molecule m = oracle::random_molecule(rng, 16);
    for (int r = 0; r <= 3; ++r) {
      EXPECT_LE(morgan_fingerprint(m, r, 4096).popcount(), oracle::count_environments(m, r));
    }
  }
}

TEST(FingerprintTest, InvalidWidth) {
  EXPECT_THROW(Fingerprint(100, 2), std::invalid_argument);
  EXPECT_THROW(Fingerprint(32, 2), std::invalid_argument);
  EXPECT_NO_THROW(Fingerprint(64, 2));
}

TEST(FingerprintTest, IndependentOfInputOrder) {
  EXPECT_EQ(morgan_fingerprint(parse_smiles("OCC(=O)N")), morgan_fingerprint(parse_smiles("NC(=O)CO")));
}

TEST(TanimotoTest, Values) {
  const auto a = morgan_fingerprint(parse_smiles("CCO"));
  EXPECT_DOUBLE_EQ(tanimoto(a, a), 1.0);
  const auto b = morgan_fingerprint(parse_smiles("c1ccccc1"));
  const double t = tanimoto(a, b);
  EXPECT_GE(t, 0.0);
  EXPECT_LT(t, 0.2);
  Fingerprint empty(2048, 2);
  EXPECT_DOUBLE_EQ(tanimoto(empty, empty), 1.0);
  EXPECT_THROW(tanimoto(a, Fingerprint(1024, 2)), std::invalid_argument);
}

TEST(McsTest, SmallPairs) {
  EXPECT_EQ(mcs_atoms(parse_smiles("CCO"), parse_smiles("CCC")), 2u);
  EXPECT_EQ(mcs_atoms(parse_smiles("CCO"), parse_smiles("OCC")), 3u);
  EXPECT_EQ(mcs_atoms(parse_smiles("C"), parse_smiles("O")), 0u);
  EXPECT_DOUBLE_EQ(fms(parse_smiles("CCO"), parse_smiles("CCC")), 0.5);
}

TEST(McsTest, MatchesBruteForceOnSmallMolecules) {
  std::mt19937_64 rng(9);
  int checked = 0;
  while (checked < 150) {
    const Molecule a = oracle::random_molecule(rng, 8);
    const Molecule b = oracle::random_molecule(rng, 8);
    if (a.atom_count() > 8 || b.atom_count() > 8) continue;
    ++checked;
    const std::size_t exact = oracle::brute_force_mcs(a, b);
    EXPECT_EQ(mcs_atoms(a, b), exact) << a.canonical_key() << " / " << b.canonical_key();
    EXPECT_EQ(mcs_atoms(b, a), exact);
  }
}

TEST(McsTest, BudgetLimitsButNeverOvershoots) {
  const Molecule a = parse_smiles("c1ccc2ccccc2c1CCCCC(=O)O");
  const Molecule b = parse_smiles("c1ccc2cc(CCCC(=O)N)ccc2c1");
  const std::size_t full = mcs_atoms(a, b);
  const std::size_t partial = mcs_atoms(a, b, 10);
  EXPECT_LE(partial, full);
  EXPECT_LE(full, std::min(a.atom_count(), b.atom_count()));
}

}  // namespace
}  // namespace tango
