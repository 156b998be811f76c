#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "clauseforge/grade.hpp"
#include "sample_fixtures.hpp"
#include "test_util.hpp"

using namespace clauseforge;
using testutil::C;

namespace {

InternalOracle& oracle() {
  static InternalOracle instance(ProverLimits{5.0, 4000, 80});
  return instance;
}

std::string render_edges(const std::vector<std::array<int, 3>>& edges) {
  std::ostringstream out;
  for (const auto& e : edges) {
    out << e[0] << " <- " << e[1] << ", " << e[2] << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("answer parsing per task family") {
  ParsedAnswer e = parse_answer(TaskKind::kEntailment, "True");
  CHECK(e.ok);
  CHECK(e.truth);
  CHECK(parse_answer(TaskKind::kEntailment, "`false`").truth == false);
  CHECK(!parse_answer(TaskKind::kEntailment, "maybe").ok);
  CHECK(!parse_answer(TaskKind::kEntailment, "true or false").ok);

  ParsedAnswer s = parse_answer(TaskKind::kSelection, "[1, 3, 7]");
  CHECK(s.ok);
  CHECK(s.indices == std::vector<int>{1, 3, 7});
  CHECK(parse_answer(TaskKind::kSelection, "7,1,3").indices ==
        std::vector<int>{1, 3, 7});
  CHECK(!parse_answer(TaskKind::kSelection, "none of them").ok);

  ParsedAnswer r = parse_answer(TaskKind::kReconstruction, "11 <- 2, 16\n\n2 <- 9,4\n");
  CHECK(r.ok);
  REQUIRE(r.triples.size() == 2);
  CHECK(r.triples[0] == std::array<int, 3>{11, 2, 16});
  CHECK(r.triples[1] == std::array<int, 3>{2, 9, 4});
  CHECK(!parse_answer(TaskKind::kReconstruction, "step one uses two and three").ok);
}

TEST_CASE("entailment grading is exact") {
  EntailmentTask task;
  task.label = true;
  task.spec = DifficultySpec{TaskKind::kEntailment, 1, 1, 0};
  CHECK(grade_entailment(task, "True").score == doctest::Approx(1.0));
  CHECK(grade_entailment(task, "  the answer is TRUE.").score == doctest::Approx(1.0));
  CHECK(grade_entailment(task, "False").score == doctest::Approx(0.0));
  GradeReport garbage = grade_entailment(task, "perhaps");
  CHECK(garbage.score == doctest::Approx(0.0));
  CHECK(garbage.failure_reason == "format");
}

TEST_CASE("selection grading is an order-insensitive exact set match") {
  SelectionTask task;
  task.spec = DifficultySpec{TaskKind::kSelection, 1, 1, 0};
  task.answer = {1, 3, 7};
  CHECK(grade_selection(task, "[1, 3, 7]").score == doctest::Approx(1.0));
  CHECK(grade_selection(task, " 7 , 1 , 3 ").score == doctest::Approx(1.0));
  CHECK(grade_selection(task, "[1, 2, 3, 7]").score == doctest::Approx(0.0));
  CHECK(grade_selection(task, "[1, 3]").score == doctest::Approx(0.0));
  CHECK(grade_selection(task, "first and third").score == doctest::Approx(0.0));
}

TEST_CASE("the reconstruction ground truth grades to one") {
  ReconstructionTask task = samples::topology_reconstruction_task();
  GradeReport report = grade_reconstruction(task, render_edges(task.answer), oracle());
  CHECK(report.structural_ok);
  CHECK(report.score == doctest::Approx(1.0));
  CHECK(!report.flagged);
  CHECK(report.step_verdicts.size() == 9);
}

TEST_CASE("a known-perfect reordered answer grades to one") {
  ReconstructionTask task = samples::topology_reconstruction_task();
  GradeReport report =
      grade_reconstruction(task, samples::topology_perfect_answer(), oracle());
  CHECK(report.structural_ok);
  CHECK(report.score == doctest::Approx(1.0));
}

TEST_CASE("one corrupted step costs exactly one ninth") {
  ReconstructionTask task = samples::topology_reconstruction_task();
  // 15 <- 6, 8 becomes 15 <- 6, 10; clause 8 stays in use elsewhere.
  std::string answer = samples::topology_perfect_answer();
  std::size_t at = answer.find("15 <- 6, 8");
  REQUIRE(at != std::string::npos);
  answer.replace(at, 10, "15 <- 6, 10");
  for (bool strict : {true, false}) {
    ReconstructionGradeOptions options;
    options.strict_all_used = strict;
    GradeReport report = grade_reconstruction(task, answer, oracle(), options);
    CHECK(report.structural_ok);
    CHECK(report.score == doctest::Approx(8.0 / 9.0));
  }
}

TEST_CASE("a corruption that drops a clause zeroes only the strict mode") {
  ReconstructionTask task = samples::topology_reconstruction_task();
  // Clause 6 appears only as a parent of 15.
  std::string answer = samples::topology_perfect_answer();
  std::size_t at = answer.find("15 <- 6, 8");
  REQUIRE(at != std::string::npos);
  answer.replace(at, 10, "15 <- 3, 4");

  GradeReport strict = grade_reconstruction(task, answer, oracle());
  CHECK(!strict.structural_ok);
  CHECK(strict.score == doctest::Approx(0.0));
  CHECK(strict.failure_reason == "not all clauses used");

  ReconstructionGradeOptions lenient;
  lenient.strict_all_used = false;
  GradeReport loose = grade_reconstruction(task, answer, oracle(), lenient);
  CHECK(loose.structural_ok);
  CHECK(loose.score == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("precise but incomplete answers split the two modes") {
  ReconstructionTask task = samples::topology_reconstruction_task();
  std::string answer =
      "2 <- 9,4\n"
      "7 <- 13,4\n"
      "11 <- 16,2\n"
      "12 <- 5,1\n"
      "16 <- 10,7\n";
  GradeReport strict = grade_reconstruction(task, answer, oracle());
  CHECK(!strict.structural_ok);
  CHECK(strict.score == doctest::Approx(0.0));

  ReconstructionGradeOptions lenient;
  lenient.strict_all_used = false;
  GradeReport loose = grade_reconstruction(task, answer, oracle(), lenient);
  CHECK(loose.structural_ok);
  CHECK(loose.score == doctest::Approx(5.0 / 9.0));
}

TEST_CASE("structural failures score zero") {
  ReconstructionTask task = samples::topology_reconstruction_task();
  SUBCASE("cycle") {
    std::string answer =
        "11 <- 2, 16\n12 <- 1, 5\n13 <- 3, 14\n14 <- 8, 12\n15 <- 6, 8\n"
        "16 <- 7, 10\n2 <- 4, 9\n7 <- 4, 13\n9 <- 3, 11\n";  // 9 <- 11 <- 2 <- 9
    GradeReport report = grade_reconstruction(task, answer, oracle());
    CHECK(!report.structural_ok);
    CHECK(report.score == doctest::Approx(0.0));
  }
  SUBCASE("duplicate child") {
    GradeReport report =
        grade_reconstruction(task, "11 <- 2, 16\n11 <- 7, 10\n", oracle());
    CHECK(!report.structural_ok);
    CHECK(report.failure_reason == "clause derived more than once");
  }
  SUBCASE("identical parents") {
    GradeReport report = grade_reconstruction(task, "11 <- 2, 2\n", oracle());
    CHECK(!report.structural_ok);
  }
  SUBCASE("index out of range") {
    GradeReport report = grade_reconstruction(task, "11 <- 2, 99\n", oracle());
    CHECK(!report.structural_ok);
  }
  SUBCASE("unparseable text") {
    GradeReport report = grade_reconstruction(task, "I rest my case.", oracle());
    CHECK(!report.structural_ok);
    CHECK(report.failure_reason == "format");
  }
}

TEST_CASE("corrupting a correct step never raises the score") {
  ReconstructionTask task = samples::topology_reconstruction_task();
  ReconstructionGradeOptions lenient;
  lenient.strict_all_used = false;
  double baseline =
      grade_reconstruction(task, render_edges(task.answer), oracle(), lenient).score;
  Rng rng(101);
  int applied = 0;
  for (int round = 0; round < 24 && applied < 12; ++round) {
    auto edges = task.answer;
    auto& edge = edges[rng.uniform(static_cast<int>(edges.size()))];
    int slot = 1 + rng.uniform(2);
    int wrong = 1 + rng.uniform(static_cast<int>(task.clauses.size()));
    if (wrong == edge[1] || wrong == edge[2] || wrong == edge[0]) continue;
    edge[slot] = wrong;
    GradeReport report =
        grade_reconstruction(task, render_edges(edges), oracle(), lenient);
    if (!report.structural_ok) continue;  // corruption broke the structure
    CHECK(report.score <= baseline + 1e-12);
    ++applied;
  }
  CHECK(applied >= 8);
}

TEST_CASE("the variant dispatcher grades by task kind") {
  EntailmentTask e;
  e.label = false;
  e.spec = DifficultySpec{TaskKind::kEntailment, 1, 1, 0};
  CHECK(grade(TaskInstance{e}, "False", oracle()).score == doctest::Approx(1.0));
  SelectionTask s;
  s.spec = DifficultySpec{TaskKind::kSelection, 1, 1, 0};
  s.answer = {2};
  CHECK(grade(TaskInstance{s}, "[2]", oracle()).score == doctest::Approx(1.0));
}
