#include <liespectra/acceptance.hpp>

#include <gtest/gtest.h>

#include <iostream>

using namespace liespectra;

namespace {
void run(int id) {
  auto r = acceptance_criteria().at(id - 1)();
  std::cout << format_criterion(r) << std::endl;
  EXPECT_EQ(r.id, id);
  EXPECT_TRUE(r.passed) << r.detail;
}
}  // namespace

TEST(Acceptance, Criterion01SubmersionFrame) { run(1); }
TEST(Acceptance, Criterion02EigenfunctionPullback) { run(2); }
TEST(Acceptance, Criterion03StructureIdentity) { run(3); }
TEST(Acceptance, Criterion04PullbackSplit) { run(4); }
TEST(Acceptance, Criterion05TildeCodifferential) { run(5); }
TEST(Acceptance, Criterion06PrescribedSupport) { run(6); }
TEST(Acceptance, Criterion07HarmonicForms) { run(7); }
TEST(Acceptance, Criterion08Bounds) { run(8); }
TEST(Acceptance, Criterion09StructuralInvariants) { run(9); }
TEST(Acceptance, Criterion10Betti) { run(10); }
