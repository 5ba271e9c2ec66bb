#include <gtest/gtest.h>

#include <random>

#include "edl/dependency.hpp"
#include "oracles.hpp"

using namespace edl;

namespace {

const std::vector<GenerativeMethod> kMethods = {GenerativeMethod::cuts,
                                                GenerativeMethod::partition,
                                                GenerativeMethod::graph};

EvidenceFamily fam(std::initializer_list<VarSet> members) { return EvidenceFamily(members); }

}  // namespace

TEST(Evidence, Definition) {
  EXPECT_TRUE(is_evidence({"a", "c"}, {"a", "b"}, {"c"}));
  EXPECT_FALSE(is_evidence({}, {"a"}, {"b"}));
  EXPECT_FALSE(is_evidence({"x"}, {"x"}, {"y"}));
  EXPECT_TRUE(is_evidence({"x", "z"}, {"x"}, {"z", "y"}));
  EXPECT_FALSE(is_evidence({"x", "w"}, {"x"}, {"y"}));
}

TEST(Evidence, WeakeningOfTheFirstArgument) {
  const VarSet u = oracle::names(4);
  const auto sets = oracle::power_set(u);
  for (const auto& w : sets)
    for (const auto& x : sets)
      for (const auto& y : sets)
        if (is_evidence(w, x, y))
          for (const auto& x2 : sets)
            if (x.subset_of(x2)) {
              EXPECT_TRUE(is_evidence(w, x2, y));
            }
}

TEST(Family, RejectsEmptyMembers) {
  EXPECT_THROW(fam({VarSet{}}), std::invalid_argument);
  EXPECT_EQ(fam({{"y"}, {"x"}, {"x", "y"}}).str(), "{{x},{y},{x,y}}");
  EXPECT_EQ(fam({{"y", "z"}, {"x"}}).support(), VarSet({"x", "y", "z"}));
}

TEST(PFamily, JudgingScenarioOne) {
  const KripkeModel m = oracle::load_fixture("judging_case_1");
  const World s = m.world("s");
  EXPECT_EQ(p_family(m, s, DepKind::local), fam({{"bar_a", "bar_b"}, {"bar_a", "bar_c"}}));
  EXPECT_EQ(p_family(m, s, DepKind::global),
            fam({{"bar_a", "bar_b"}, {"bar_a", "bar_c"}, {"bar_b", "bar_c"}}));
}

TEST(PFamily, JudgingScenarioTwo) {
  const KripkeModel m = oracle::load_fixture("judging_case_2");
  EXPECT_EQ(p_family(m, m.world("s"), DepKind::local), fam({{"bar_a"}, {"bar_a", "bar_b", "bar_c"}}));
}

TEST(PFamily, SingletonClassIsEmpty) {
  const KripkeModel m = load_model(R"({"variables": ["x"],
    "worlds": [{"id": "s", "vals": {"x": 0}}, {"id": "t", "vals": {"x": 1}}],
    "epistemic_partition": [["s", "t"]], "nomic_partition": [["s"], ["t"]]})");
  EXPECT_TRUE(p_family(m, 0, DepKind::global).empty());
  EXPECT_TRUE(p_family(m, 0, DepKind::local).empty());
  EXPECT_THROW(p_family(m, 5, DepKind::local), ModelError);
}

TEST(PFamily, LocalIsInsideGlobal) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenParams params;
    params.seed = seed;
    const KripkeModel m = random_model(params);
    for (World s = 0; s < m.world_count(); ++s) {
      const auto local = p_family(m, s, DepKind::local);
      const auto global = p_family(m, s, DepKind::global);
      for (const auto& w : local) EXPECT_TRUE(global.contains(w));
      const auto gl = generative_family(local);
      const auto gg = generative_family(global);
      for (const auto& w : gl) EXPECT_TRUE(gg.contains(w));
    }
  }
}

TEST(Sigma, Examples) {
  EXPECT_EQ(sigma(fam({{"x"}, {"x", "y"}}), {"x", "y"}), (std::vector<VarSet>{{"x"}, {"x", "y"}}));
  EXPECT_EQ(sigma(fam({{"x"}, {"y", "z"}}), {"x", "y"}), (std::vector<VarSet>{{"x"}}));
  EXPECT_TRUE(sigma(EvidenceFamily{}, {"x"}).empty());
}

TEST(Generative, Examples) {
  for (auto method : kMethods) {
    EXPECT_FALSE(is_generative(fam({{"x"}, {"y"}}), {"x", "y"}, method)) << method_name(method);
    EXPECT_TRUE(is_generative(fam({{"x", "y"}, {"y", "z"}}), {"x", "y", "z"}, method));
    EXPECT_TRUE(is_generative(fam({{"x"}}), {"x"}, method));
    EXPECT_FALSE(is_generative(fam({{"x", "y"}}), {"x"}, method));
    EXPECT_FALSE(is_generative(EvidenceFamily{}, {"x"}, method));
    EXPECT_THROW(is_generative(fam({{"x"}}), {}, method), std::invalid_argument);
  }
}

TEST(Generative, EveryMemberIsGenerative) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto p = oracle::random_family(rng, oracle::names(5), 6);
    for (const auto& w : p)
      for (auto method : kMethods) EXPECT_TRUE(is_generative(p, w, method));
  }
}

TEST(Generative, MethodsAgreeWithCutOracle) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 5;
    const VarSet support = oracle::names(n);
    const auto p = oracle::random_family(rng, support, 7);
    for (const auto& w : oracle::nonempty_subsets(support.with("fresh"))) {
      const bool want = oracle::generative_by_cuts(p, w);
      for (auto method : kMethods)
        ASSERT_EQ(is_generative(p, w, method), want)
            << method_name(method) << " P=" << p.str() << " W=" << w.str();
    }
  }
}

TEST(GenerativeFamily, Examples) {
  EXPECT_EQ(generative_family(fam({{"x"}, {"x", "y"}})), fam({{"x"}, {"x", "y"}}));
  EXPECT_EQ(generative_family(fam({{"x"}, {"y"}})), fam({{"x"}, {"y"}}));
  EXPECT_TRUE(generative_family(EvidenceFamily{}).empty());
  EXPECT_EQ(generative_family(fam({{"x", "y"}, {"y", "z"}, {"w"}})),
            fam({{"w"}, {"x", "y"}, {"y", "z"}, {"x", "y", "z"}}));
}

TEST(GenerativeFamily, MatchesConnectedUnionsAndFilter) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const VarSet support = oracle::names(1 + rng() % 5);
    const auto p = oracle::random_family(rng, support, 7);
    const auto g = generative_family(p);
    EXPECT_EQ(g.members(), oracle::connected_unions(p)) << p.str();

    std::set<VarSet> filtered;
    for (const auto& w : oracle::nonempty_subsets(p.support()))
      if (oracle::generative_by_cuts(p, w)) filtered.insert(w);
    EXPECT_EQ(g.members(), filtered) << p.str();

    for (const auto& w : p) EXPECT_TRUE(g.contains(w));
    EXPECT_EQ(generative_family(g), g) << p.str();
  }
}

// Two families decide the same D atoms over their joint support exactly when
// each is generative from the other, exactly when their closures coincide.
TEST(MethodsAgree, OnRandomFamilies) {
  std::mt19937_64 rng(12);
  std::size_t equal_cases = 0;
  for (int i = 0; i < 400; ++i) {
    const VarSet u = oracle::names(1 + rng() % 4);
    auto p = oracle::random_family(rng, u, 5);
    // Bias toward equivalent pairs: half the time, q is p plus a closure member.
    EvidenceFamily q;
    if (i % 2) {
      const auto g = generative_family(p);
      std::set<VarSet> members = p.members();
      if (!g.empty()) members.insert(*std::next(g.begin(), rng() % g.size()));
      q = EvidenceFamily(std::move(members));
    } else {
      q = oracle::random_family(rng, u, 5);
    }
    const auto sets = oracle::power_set(p.support() | q.support());
    bool atoms_agree = true;
    for (const auto& x : sets)
      for (const auto& y : sets) atoms_agree = atoms_agree && has_evidence(p, x, y) == has_evidence(q, x, y);

    auto generated_by = [](const EvidenceFamily& a, const EvidenceFamily& b) {
      for (const auto& w : a)
        if (!is_generative(b, w, GenerativeMethod::cuts)) return false;
      return true;
    };
    const bool zigzag = generated_by(p, q) && generated_by(q, p);
    const bool closures = generative_family(p) == generative_family(q);
    EXPECT_EQ(atoms_agree, zigzag) << p.str() << " vs " << q.str();
    EXPECT_EQ(atoms_agree, closures) << p.str() << " vs " << q.str();
    equal_cases += atoms_agree;
  }
  EXPECT_GT(equal_cases, 100u);
}

TEST(EvidenceEval, JudgingScenarioTwo) {
  const KripkeModel m = oracle::load_fixture("judging_case_2");
  const World s = m.world("s");
  EXPECT_FALSE(evidence_eval_d(m, s, DepKind::local, {"bar_a"}, {"bar_c"}));
  EXPECT_TRUE(evidence_eval_d(m, s, DepKind::local, {"bar_a", "bar_b"}, {"bar_c"}));
  for (World t = 0; t < m.world_count(); ++t)
    EXPECT_FALSE(evidence_eval_d(m, t, DepKind::global, {}, {"bar_c"}));
  EXPECT_THROW(evidence_eval_d(m, s, DepKind::local, {"nope"}, {"bar_c"}), ModelError);
}

TEST(Generative, SupportLimit) {
  std::set<VarSet> members;
  for (int i = 0; i < 70; ++i) members.insert(VarSet({"v" + std::to_string(i)}));
  EXPECT_THROW(generative_family(EvidenceFamily(members)), std::length_error);
}
