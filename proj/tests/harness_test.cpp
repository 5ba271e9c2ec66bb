#include <gtest/gtest.h>

#include "edl/harness.hpp"
#include "oracles.hpp"

using namespace edl;

namespace {

std::size_t disjunct_count(const Formula& f) {
  // disj(a, b) is !( !a & !b ).
  if (f.kind() == Formula::Kind::neg && f.child().kind() == Formula::Kind::conj &&
      f.child().left().kind() == Formula::Kind::neg &&
      f.child().right().kind() == Formula::Kind::neg)
    return disjunct_count(f.child().left().child()) + 1;
  return 1;
}

// The right-hand side of iff(a, b) = conj(implies(a,b), implies(b,a)).
Formula iff_rhs(const Formula& f) { return f.left().child().right().child(); }

}  // namespace

TEST(RandomModel, Deterministic) {
  GenParams p;
  EXPECT_EQ(dump_model(random_model(p)), dump_model(random_model(p)));
  p.seed = 1;
  EXPECT_NE(dump_model(random_model(p)), dump_model(random_model(GenParams{})));
}

TEST(RandomModel, SingleWorld) {
  GenParams p;
  p.min_worlds = p.max_worlds = 1;
  const KripkeModel m = random_model(p);
  EXPECT_EQ(m.world_count(), 1u);
  EXPECT_EQ(m.nomic_partition(), (std::vector<std::vector<World>>{{0}}));
  EXPECT_EQ(m.epistemic_partition(), (std::vector<std::vector<World>>{{0}}));
}

TEST(RandomModel, HiddenVariablesEmptyDeltaSometimes) {
  std::size_t hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenParams p;
    p.seed = seed;
    const KripkeModel m = random_model(p);
    for (World u = 0; u < m.world_count(); ++u)
      for (World v = 0; v < m.world_count(); ++v)
        if (!agree_outside(m, u, v, m.named_variables()) && delta(m, u, v).empty() &&
            differs_on(m, u, v, m.named_variables()))
          ++hits;
  }
  EXPECT_GT(hits, 0u);
}

TEST(RandomModel, InfeasibleParameters) {
  GenParams p;
  p.min_worlds = p.max_worlds = 0;
  EXPECT_THROW(random_model(p), std::invalid_argument);
  p = GenParams{};
  p.min_worlds = 5;
  p.max_worlds = 2;
  EXPECT_THROW(random_model(p), std::invalid_argument);
  p = GenParams{};
  p.value_bound = 0;
  EXPECT_THROW(random_model(p), std::invalid_argument);
}

TEST(RandomModel, RespectsBounds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenParams p;
    p.seed = seed;
    p.max_worlds = 5;
    p.max_nomic_cells = 2;
    p.value_bound = 2;
    const KripkeModel m = random_model(p);
    EXPECT_LE(m.world_count(), 5u);
    EXPECT_LE(m.nomic_partition().size(), 2u);
    for (World w = 0; w < m.world_count(); ++w)
      for (std::size_t v = 0; v < m.variables().size(); ++v) EXPECT_LT(m.value(w, v), 2u);
  }
}

TEST(RandomFormula, DepthAndNames) {
  GenParams p;
  const KripkeModel m = random_model(p);
  std::mt19937_64 rng(0);
  for (int i = 0; i < 500; ++i) {
    const Formula f = random_formula(rng, m, 2, 3);
    EXPECT_LE(f.modal_depth(), 2u);
    EXPECT_NO_THROW(check_names(m, f));
  }
}

TEST(Instantiate, EmptyArgumentSchema) {
  SchemaInstance s{Schema::e_for_d, DepKind::global, {}, {"x"}, {}, {}};
  const Formula d0x = dep_g({}, {"x"}), dx0 = dep_g({"x"}, {});
  EXPECT_EQ(instantiate(s), conj(iff(d0x, dx0), iff(dx0, neg(Formula::top()))));
}

TEST(Instantiate, FourForGlobal) {
  SchemaInstance s{Schema::four_for_dg, DepKind::global, {}, {"x"}, {"y"}, {}};
  EXPECT_EQ(instantiate(s), implies(dep_g({"x"}, {"y"}), all(dep_g({"x"}, {"y"}))));
}

TEST(Instantiate, QForSingletons) {
  SchemaInstance s{Schema::q_for_d, DepKind::local, {}, {"x"}, {"y"}, {}};
  const Formula f = instantiate(s);
  // X'={x}, Y'={y} is the only choice, so a single Q({x,y}) disjunct.
  EXPECT_EQ(f, iff(dep_l({"x"}, {"y"}), build_q(DepKind::local, {"x", "y"})));
}

TEST(Instantiate, QDisjunctsAreDistinctUnions) {
  SchemaInstance s{Schema::q_for_d, DepKind::global, {}, {"x", "y"}, {"z"}, {}};
  // Unions X' u Y' over X' in {x},{y},{x,y} and Y' = {z}.
  EXPECT_EQ(disjunct_count(iff_rhs(instantiate(s))), 3u);
  s.y = {"x"};
  // {x}, {x,y} (from X'={y} or {x,y}).
  EXPECT_EQ(disjunct_count(iff_rhs(instantiate(s))), 2u);
}

TEST(Instantiate, SideConditions) {
  EXPECT_THROW(instantiate({Schema::q_for_d, DepKind::global, {}, {}, {"y"}, {}}),
               SideConditionError);
  EXPECT_THROW(instantiate({Schema::weakening, DepKind::global, {}, {"x", "y"}, {"z"}, {"x"}}),
               SideConditionError);
  EXPECT_THROW(instantiate({Schema::k_dist, DepKind::global, {Formula::top()}, {}, {}, {}}),
               SideConditionError);
  EXPECT_NO_THROW(instantiate({Schema::weakening, DepKind::local, {}, {"x"}, {"z"}, {"x", "y"}}));
}

TEST(Instantiate, LabelsAndNames) {
  SchemaInstance s{Schema::q_for_d, DepKind::local, {}, {"x"}, {"y"}, {}};
  EXPECT_EQ(s.label(), "Q-for-D[l]");
  s.schema = Schema::k_t;
  EXPECT_EQ(s.label(), "T-for-K");
  EXPECT_EQ(all_schemas().size(), 16u);
}

TEST(Instantiate, SampledInstancesAreValid) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenParams p;
    p.seed = seed;
    const KripkeModel m = random_model(p);
    const auto instances = sample_instances(m, seed, 3);
    std::set<std::string> labels;
    for (const auto& inst : instances) {
      labels.insert(inst.label());
      const Formula f = instantiate(inst);
      ASSERT_TRUE(valid_on_model(m, f)) << inst.label() << " " << render(f);
      ASSERT_TRUE(valid_on_model(m, f, Route::evidence)) << inst.label();
      if (inst.schema == Schema::q_for_d || inst.schema == Schema::e_for_d ||
          inst.schema == Schema::four_for_dg || inst.schema == Schema::dg_definability) {
        EXPECT_LE(inst.x.size(), 3u);
      }
      for (const auto& phi : inst.formulas) EXPECT_LE(phi.modal_depth(), 2u);
    }
    EXPECT_EQ(labels.size(), 22u);
  }
}

TEST(Suite, CleanRun) {
  GenParams p;
  const SoundnessReport r = soundness_suite(p, 60);
  EXPECT_EQ(r.trials, 60u);
  EXPECT_EQ(r.schemas, 22u);
  EXPECT_TRUE(r.counterexamples.empty()) << format_report(r);
  EXPECT_NE(format_report(r).find("summary trials=60 schemas=22"), std::string::npos);
}

TEST(Suite, OneWorldModels) {
  GenParams p;
  p.min_worlds = p.max_worlds = 1;
  const SoundnessReport r = soundness_suite(p, 1);
  EXPECT_TRUE(r.counterexamples.empty());
  EXPECT_THROW(soundness_suite(p, 0), std::invalid_argument);
}

// Without the agree-outside conjunct, D(X,Y) only asks for a pair differing on
// X and on Y. Every schema stays valid under that reading, so the suite sees
// the mutation only through the cross-check against the evidence route.
TEST(Suite, MutationDroppingAgreeOutside) {
  SoundnessOptions opts;
  opts.oracle = [](const KripkeModel& m, World s, DepKind kind, const VarSet& x, const VarSet& y) {
    for (World u : m.nomic_class(s))
      for (World v : m.nomic_class(s)) {
        if (kind == DepKind::local && v != s) continue;
        if (differs_on(m, u, v, x) && differs_on(m, u, v, y)) return true;
      }
    return false;
  };
  const SoundnessReport r = soundness_suite(GenParams{}, 100, opts);
  EXPECT_GT(r.count(Counterexample::Kind::route_disagreement), 0u);
  EXPECT_EQ(r.count(Counterexample::Kind::invalid), 0u);
  EXPECT_NE(format_report(r).find("kind=route-disagreement"), std::string::npos);
}

// Forgetting that Y must change breaks Symmetry and Q outright.
TEST(Suite, MutationDroppingDiffersOnY) {
  SoundnessOptions opts;
  opts.oracle = [](const KripkeModel& m, World s, DepKind kind, const VarSet& x, const VarSet& y) {
    for (World u : m.nomic_class(s))
      for (World v : m.nomic_class(s)) {
        if (kind == DepKind::local && v != s) continue;
        if (agree_outside(m, u, v, x | y) && differs_on(m, u, v, x)) return true;
      }
    return false;
  };
  const SoundnessReport r = soundness_suite(GenParams{}, 100, opts);
  EXPECT_GT(r.count(Counterexample::Kind::invalid), 0u);
  std::set<std::string> broken;
  for (const auto& c : r.counterexamples)
    if (c.kind == Counterexample::Kind::invalid) broken.insert(c.schema);
  EXPECT_TRUE(broken.count("Symmetry[g]") || broken.count("Symmetry[l]")) << format_report(r);
}

TEST(Suite, JsonReport) {
  const SoundnessReport r = soundness_suite(GenParams{}, 2);
  const std::string j = report_json(r);
  EXPECT_NE(j.find("\"trials\": 2"), std::string::npos);
  EXPECT_NE(j.find("\"counterexamples\": []"), std::string::npos);
}
