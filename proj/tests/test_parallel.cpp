#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "fdist/lemmas.hpp"
#include "fdist/parallel.hpp"
#include "fdist/search.hpp"

using namespace fdist;

namespace {

// Oversubscribe so the parallel path really interleaves on small machines.
class Parallel : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = thread_count();
    set_thread_count(4);
  }
  void TearDown() override { set_thread_count(saved_); }

 private:
  int saved_ = 1;
};

}  // namespace

TEST_F(Parallel, DeriveSeedIsStable) {
  static_assert(derive_seed(0, 0) != derive_seed(0, 1));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
  EXPECT_EQ(thread_count(), 4);
}

TEST_F(Parallel, ForEachIndexCoversEverySlotAndRethrows) {
  std::vector<int> hits(1000, 0);
  for_each_index(1000, Execution::Parallel, [&](long i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  try {
    for_each_index(100, Execution::Parallel, [](long i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
}

TEST_F(Parallel, OptimizerMatchesSerial) {
  const auto z6 = make_cyclic(6), s3 = make_symmetric(3);
  const InducedHom hom(GroupBijection(s3, z6, {0, 3, 1, 5, 2, 4}), irreps_of(z6), irreps_of(s3));
  for (int k : {1, 2}) {
    const auto a = level_k_norm(hom, k, Effort::low(), 9, Execution::Serial);
    const auto b = level_k_norm(hom, k, Effort::low(), 9, Execution::Parallel);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.meta.source, b.meta.source);
    ASSERT_EQ(a.witness.size(), b.witness.size());
    for (std::size_t i = 0; i < a.witness.size(); ++i) EXPECT_TRUE(a.witness[i] == b.witness[i]);
  }
  const auto ja = jordan_defect(hom, 200, 3, Execution::Serial), jb = jordan_defect(hom, 200, 3, Execution::Parallel);
  EXPECT_EQ(ja.value, jb.value);
  EXPECT_EQ(ja.witness_a, jb.witness_a);
}

TEST_F(Parallel, ScanMatchesSerial) {
  ScanOptions o;
  o.levels = {1, 2};
  o.effort = Effort::low();
  o.seed = 4;
  const auto z4 = make_cyclic(4), v = parse_group("Z2xZ2");
  o.exec = Execution::Serial;
  const auto a = scan_bijections(z4, v, o);
  o.exec = Execution::Parallel;
  const auto b = scan_bijections(z4, v, o);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].bijection, b.records[i].bijection);
    EXPECT_EQ(a.records[i].norm_T, b.records[i].norm_T);
    EXPECT_EQ(a.records[i].norm_Tinv, b.records[i].norm_Tinv);
    EXPECT_EQ(a.records[i].levels.at(2).forward.value, b.records[i].levels.at(2).forward.value);
  }
  EXPECT_EQ(a.min_distortion, b.min_distortion);
  EXPECT_EQ(a.argmin_level2, b.argmin_level2);
}

TEST_F(Parallel, LemmasMatchSerial) {
  BlockLemmaOptions o;
  o.dim = 4;
  o.trials = 500;
  o.seed = 12;
  o.exec = Execution::Serial;
  const auto a = verify_unitmult(o);
  o.exec = Execution::Parallel;
  const auto b = verify_unitmult(o);
  EXPECT_EQ(a.worst_margin, b.worst_margin);
  EXPECT_EQ(a.adversarial_margin, b.adversarial_margin);
  const auto t = irreps_of(make_dihedral(4));
  const auto ga = verify_norm_gap(t, 300, 1, Execution::Serial), gb = verify_norm_gap(t, 300, 1, Execution::Parallel);
  EXPECT_EQ(ga.worst_margin, gb.worst_margin);
  EXPECT_EQ(ga.min_nonzero_four_term, gb.min_nonzero_four_term);
}
