#include <random>

#include "causalg/compile.hpp"
#include "causalg/parser.hpp"
#include "doctest.h"

using namespace causalg;

namespace {

BNSpec movie_bn() {
  BNSpec spec;
  spec.variables = {
      {"X1", 3, {}},
      {"X2", 2, {}},
      {"X3", 3, {0, 1}},
      {"X4", 2, {1, 2}},
  };
  return spec;
}

/// Random exact point on every simplex block (positive entries, exact
/// normalization), used as the oracle for atom-sum identities.
std::map<int, Rational> random_block_point(const CompiledModel& model,
                                           std::mt19937_64& rng) {
  std::map<int, Rational> point;
  std::uniform_int_distribution<long> draw(1, 1 << 16);
  for (const auto& block : model.blocks) {
    long total = 0;
    std::vector<long> raw;
    for (std::size_t i = 0; i < block.vars.size(); ++i) {
      raw.push_back(draw(rng));
      total += raw.back();
    }
    for (std::size_t i = 0; i < block.vars.size(); ++i)
      point[block.vars[i]] = rational(raw[i], total);
  }
  return point;
}

Rational atom_sum_at(const CompiledModel& model,
                     const std::map<int, Rational>& point) {
  Rational sum(0);
  for (const auto& atom : model.atoms) sum += atom.evaluate(point);
  return sum;
}

TreeSpec random_tree(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 24);
  int n = size(rng);
  TreeSpec t;
  for (int v = 0; v < n; ++v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "v%03d", v);
    t.vertices.push_back(buf);
    if (v > 0) {
      std::uniform_int_distribution<int> parent(0, v - 1);
      t.edges.push_back({parent(rng), v});
    }
  }
  return t;
}

}  // namespace

TEST_CASE("compile_bn: movie network structure") {
  auto model = compile_bn(movie_bn());
  CHECK(model.atoms.size() == 36);
  CHECK(model.blocks.size() == 14);
  CHECK(model.free_dimension() == 21);
  CHECK(model.sum_to_one.size() == 14);
  CHECK(movie_bn().saturated_parameter_count() == 63);
  CHECK(model.table->size() == 35);  // 3 + 2 + 18 + 12 after merging
  for (const auto& atom : model.atoms) {
    CHECK(atom.term_count() == 1);
    CHECK(atom.total_degree() == 4);
  }
  // odometer order, last variable fastest
  CHECK(model.chain_list.front().label == "p(1,1,1,1)");
  CHECK(model.chain_list[1].label == "p(1,1,1,2)");
  CHECK(model.chain_list.back().label == "p(3,2,3,2)");
  CHECK(model.find_chain("p(2,1,2,1)") == 14);  // 1*12 + 0*6 + 1*2 + 0

  // block inventory: 1 + 1 + 6 + 6 with sizes 3, 2, 3x6, 2x6
  int size3 = 0, size2 = 0;
  for (const auto& b : model.blocks) {
    if (b.vars.size() == 3) ++size3;
    if (b.vars.size() == 2) ++size2;
  }
  CHECK(size3 == 7);
  CHECK(size2 == 7);
  CHECK(model.bn.has_value());
  CHECK(model.bn->assignments.size() == 36);
}

TEST_CASE("compile_bn: factor variables follow the parent configuration") {
  auto model = compile_bn(movie_bn());
  int i = model.find_chain("p(2,1,2,1)");
  const auto& t = *model.table;
  auto name = [&](int f) { return t.name(model.bn->factor_vars[i][f]); };
  CHECK(name(0) == "pi(X1=2)");
  CHECK(name(1) == "pi(X2=1)");
  CHECK(name(2) == "pi(X3=2|X1=2,X2=1)");
  CHECK(name(3) == "pi(X4=1|X2=1,X3=2)");
  Polynomial expect = Polynomial::constant(model.table, Rational(1));
  for (int f = 0; f < 4; ++f)
    expect *= Polynomial::variable(model.table, model.bn->factor_vars[i][f]);
  CHECK(model.atoms[i] == expect);
}

TEST_CASE("compile_bn: single binary variable") {
  BNSpec spec;
  spec.variables = {{"X", 2, {}}};
  auto model = compile_bn(spec);
  REQUIRE(model.blocks.size() == 1);
  REQUIRE(model.atoms.size() == 2);
  auto s1 = Polynomial::variable(model.table, model.blocks[0].vars[0]);
  auto s2 = Polynomial::variable(model.table, model.blocks[0].vars[1]);
  CHECK(model.atoms[0] == s1);
  CHECK(model.atoms[1] == s2);
  // second atom equals 1 - s1 modulo the sum-to-one constraint
  CHECK(model.atoms[0] + model.atoms[1] - Polynomial::constant(model.table, Rational(1)) ==
        model.sum_to_one[0]);
}

TEST_CASE("compile_bn: two independent binary variables") {
  BNSpec spec;
  spec.variables = {{"X1", 2, {}}, {"X2", 2, {}}};
  auto model = compile_bn(spec);
  REQUIRE(model.blocks.size() == 2);  // X2 block merged across X1 contexts
  REQUIRE(model.atoms.size() == 4);
  auto v = [&](int b, int k) {
    return Polynomial::variable(model.table, model.blocks[b].vars[k]);
  };
  CHECK(model.atoms[0] == v(0, 0) * v(1, 0));
  CHECK(model.atoms[1] == v(0, 0) * v(1, 1));
  CHECK(model.atoms[2] == v(0, 1) * v(1, 0));
  CHECK(model.atoms[3] == v(0, 1) * v(1, 1));
  // matches the closed form (s1 s2, s1(1-s2), (1-s1)s2, (1-s1)(1-s2))
  std::map<int, Rational> pt{{model.blocks[0].vars[0], rational(2, 7)},
                             {model.blocks[0].vars[1], rational(5, 7)},
                             {model.blocks[1].vars[0], rational(1, 3)},
                             {model.blocks[1].vars[1], rational(2, 3)}};
  CHECK(model.atoms[0].evaluate(pt) == rational(2, 21));
  CHECK(model.atoms[1].evaluate(pt) == rational(4, 21));
  CHECK(model.atoms[2].evaluate(pt) == rational(5, 21));
  CHECK(model.atoms[3].evaluate(pt) == rational(10, 21));
}

TEST_CASE("compile_bn: errors and cap") {
  BNSpec bad;
  bad.variables = {{"X", 1, {}}};
  CHECK_THROWS_AS(compile_bn(bad), Error);
  BNSpec cyc;
  cyc.variables = {{"A", 2, {1}}, {"B", 2, {}}};
  CHECK_THROWS_AS(compile_bn(cyc), Error);
  CHECK_THROWS_WITH_AS(compile_bn(movie_bn(), 35),
                       "chain cap exceeded (35)", Error);
}

TEST_CASE("compile_bn: atom normalization on random networks") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> nvars(1, 5), levels(2, 3), coin(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    BNSpec spec;
    int n = nvars(rng);
    for (int i = 0; i < n; ++i) {
      BNSpec::Variable v{"X" + std::to_string(i + 1), levels(rng), {}};
      for (int p = 0; p < i; ++p)
        if (coin(rng)) v.parents.push_back(p);
      spec.variables.push_back(v);
    }
    auto model = compile_bn(spec);
    CHECK(static_cast<long>(model.atoms.size()) == spec.joint_size());
    for (const auto& atom : model.atoms)
      CHECK(atom.total_degree() == static_cast<unsigned>(n));
    auto point = random_block_point(model, rng);
    CHECK(atom_sum_at(model, point) == Rational(1));
  }
}

TEST_CASE("compile_tree: depth-1 tree") {
  TreeSpec t;
  t.vertices = {"root", "a", "b", "c"};
  t.edges = {{0, 1}, {0, 2}, {0, 3}};
  auto model = compile_tree(t);
  REQUIRE(model.blocks.size() == 1);
  REQUIRE(model.atoms.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(model.atoms[i] ==
          Polynomial::variable(model.table, model.blocks[0].vars[i]));
  }
  CHECK(model.table->name(model.blocks[0].vars[0]) == "pi(a|root)");
}

TEST_CASE("compile_tree: balanced binary depth 2") {
  TreeSpec t;
  t.vertices = {"r", "a", "b", "aa", "ab", "ba", "bb"};
  t.edges = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}};
  auto model = compile_tree(t);
  CHECK(model.atoms.size() == 4);
  CHECK(model.blocks.size() == 3);
  for (const auto& atom : model.atoms) CHECK(atom.total_degree() == 2);
  CHECK(model.chain_list[0].label == "r>a>aa");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial)
    CHECK(atom_sum_at(model, random_block_point(model, rng)) == Rational(1));
}

TEST_CASE("compile_tree: two unfoldings with unequal depth") {
  // watch side runs prior -> movie -> post -> arrest (degree 4), the
  // no-movie side skips the post level (degree 3)
  TreeSpec t;
  auto add = [&](const std::string& id) {
    t.vertices.push_back(id);
    return static_cast<int>(t.vertices.size()) - 1;
  };
  int root = add("start");
  for (int x1 = 1; x1 <= 3; ++x1) {
    int prior = add("x1_" + std::to_string(x1));
    t.edges.push_back({root, prior});
    int watch = add("watch_" + std::to_string(x1));
    int skip = add("nomovie_" + std::to_string(x1));
    t.edges.push_back({prior, watch});
    t.edges.push_back({prior, skip});
    for (int x3 = 1; x3 <= 3; ++x3) {
      int post = add("post_" + std::to_string(x1) + std::to_string(x3));
      t.edges.push_back({watch, post});
      t.edges.push_back({post, add("w" + std::to_string(x1) +
                                   std::to_string(x3) + "_arrest")});
      t.edges.push_back({post, add("w" + std::to_string(x1) +
                                   std::to_string(x3) + "_free")});
    }
    t.edges.push_back({skip, add("n" + std::to_string(x1) + "_arrest")});
    t.edges.push_back({skip, add("n" + std::to_string(x1) + "_free")});
  }
  auto model = compile_tree(t);
  REQUIRE(model.atoms.size() == 24);
  int deg4 = 0, deg3 = 0;
  for (const auto& atom : model.atoms) {
    if (atom.total_degree() == 4) ++deg4;
    if (atom.total_degree() == 3) ++deg3;
  }
  CHECK(deg4 == 18);
  CHECK(deg3 == 6);
  std::mt19937_64 rng(11);
  CHECK(atom_sum_at(model, random_block_point(model, rng)) == Rational(1));
}

TEST_CASE("compile_tree: errors") {
  TreeSpec two_roots;
  two_roots.vertices = {"a", "b", "c"};
  two_roots.edges = {{0, 2}};
  CHECK_THROWS_AS(compile_tree(two_roots), Error);
  TreeSpec cycle;
  cycle.vertices = {"a", "b"};
  cycle.edges = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(compile_tree(cycle), Error);
}

TEST_CASE("compile_poset: diamond") {
  HasseDiagram d;
  d.vertices = {{"v0", false}, {"a", false}, {"b", false}, {"vt", true}};
  d.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  auto model = compile_poset(d);
  REQUIRE(model.atoms.size() == 2);
  auto var = [&](const std::string& name) {
    return Polynomial::variable(model.table, *model.table->find(name));
  };
  CHECK(model.atoms[0] == var("pi(a|v0)") * var("pi(vt|a)"));
  CHECK(model.atoms[1] == var("pi(b|v0)") * var("pi(vt|b)"));
  std::map<int, Rational> pt{{*model.table->find("pi(a|v0)"), rational(1, 4)},
                             {*model.table->find("pi(b|v0)"), rational(3, 4)},
                             {*model.table->find("pi(vt|a)"), Rational(1)},
                             {*model.table->find("pi(vt|b)"), Rational(1)}};
  CHECK(atom_sum_at(model, pt) == Rational(1));
}

TEST_CASE("compile_poset: movie unfoldings share terminal circumstances") {
  HasseDiagram d;
  auto add = [&](const std::string& id, bool terminal) {
    d.vertices.push_back({id, terminal});
    return static_cast<int>(d.vertices.size()) - 1;
  };
  int start = add("start", false);
  int arrest = add("zz_arrest", true);
  int free_ = add("zz_free", true);
  for (int x1 = 1; x1 <= 3; ++x1) {
    int prior = add("x1_" + std::to_string(x1), false);
    d.edges.push_back({start, prior});
    int watch = add("watch_" + std::to_string(x1), false);
    int skip = add("nomovie_" + std::to_string(x1), false);
    d.edges.push_back({prior, watch});
    d.edges.push_back({prior, skip});
    for (int x3 = 1; x3 <= 3; ++x3) {
      int post = add("post_" + std::to_string(x1) + std::to_string(x3), false);
      d.edges.push_back({watch, post});
      d.edges.push_back({post, arrest});
      d.edges.push_back({post, free_});
    }
    d.edges.push_back({skip, arrest});
    d.edges.push_back({skip, free_});
  }
  auto cs = chains(d);
  CHECK(cs.size() == 24);  // 3*3*2 watch chains + 3*2 no-movie chains
  auto model = compile_poset(d);
  int deg4 = 0, deg3 = 0;
  for (const auto& atom : model.atoms) {
    if (atom.total_degree() == 4) ++deg4;
    if (atom.total_degree() == 3) ++deg3;
  }
  CHECK(deg4 == 18);
  CHECK(deg3 == 6);
}

TEST_CASE("chains: basics and invariants") {
  HasseDiagram single;
  single.vertices = {{"v0", false}, {"v1", true}};
  single.edges = {{0, 1}};
  auto cs = chains(single);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].label == "v0>v1");

  HasseDiagram diamond;
  diamond.vertices = {{"v0", false}, {"a", false}, {"b", false}, {"vt", true}};
  diamond.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  CHECK(chains(diamond).size() == 2);
  CHECK_THROWS_WITH_AS(chains(diamond, 1), "chain cap exceeded (1)", Error);

  // consecutive chain elements are cover relations, chains are maximal
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = HasseDiagram::from_tree(random_tree(rng));
    std::vector<int> indegree(d.vertices.size(), 0);
    for (auto [from, to] : d.edges) ++indegree[to];
    for (const auto& chain : chains(d)) {
      CHECK(indegree[chain.vertices.front()] == 0);
      CHECK(d.vertices[chain.vertices.back()].terminal);
      for (std::size_t i = 0; i + 1 < chain.vertices.size(); ++i) {
        bool cover = false;
        for (auto [from, to] : d.edges)
          if (from == chain.vertices[i] && to == chain.vertices[i + 1])
            cover = true;
        CHECK(cover);
      }
    }
  }
}

TEST_CASE("poset validation errors") {
  HasseDiagram cyc;
  cyc.vertices = {{"a", false}, {"b", false}};
  cyc.edges = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(compile_poset(cyc), Error);

  HasseDiagram shortcut;
  shortcut.vertices = {{"a", false}, {"b", false}, {"c", true}};
  shortcut.edges = {{0, 1}, {1, 2}, {0, 2}};
  CHECK_THROWS_AS(compile_poset(shortcut), Error);

  HasseDiagram bad_terminal;
  bad_terminal.vertices = {{"a", false}, {"b", true}, {"c", true}};
  bad_terminal.edges = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(compile_poset(bad_terminal), Error);

  HasseDiagram dangling;
  dangling.vertices = {{"a", false}, {"b", false}};
  dangling.edges = {{0, 1}};
  CHECK_THROWS_AS(compile_poset(dangling), Error);
}

TEST_CASE("tree/poset agreement") {
  std::mt19937_64 rng(20240818);
  for (int trial = 0; trial < 50; ++trial) {
    auto tree = random_tree(rng);
    auto a = compile_tree(tree);
    auto b = compile_poset(HasseDiagram::from_tree(tree));
    REQUIRE(a.table->size() == b.table->size());
    for (int v = 0; v < a.table->size(); ++v)
      CHECK(a.table->name(v) == b.table->name(v));
    REQUIRE(a.atoms.size() == b.atoms.size());
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
      CHECK(a.chain_list[i].label == b.chain_list[i].label);
      CHECK(a.atoms[i].terms() == b.atoms[i].terms());
    }
    REQUIRE(a.blocks.size() == b.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
      CHECK(a.blocks[i].label == b.blocks[i].label);
      CHECK(a.blocks[i].vars == b.blocks[i].vars);
      CHECK(a.sum_to_one[i].terms() == b.sum_to_one[i].terms());
    }
  }
}

TEST_CASE("add_constraints: empty lists leave the model unchanged") {
  auto model = compile_bn(movie_bn());
  auto same = add_constraints(model, {}, {});
  CHECK(same.atoms.size() == model.atoms.size());
  CHECK(same.blocks.size() == model.blocks.size());
  CHECK(same.equalities.empty());
  CHECK(same.pinned.empty());
  for (std::size_t i = 0; i < model.atoms.size(); ++i)
    CHECK(same.atoms[i] == model.atoms[i]);
}

TEST_CASE("add_constraints: no-movie pinning") {
  auto model = compile_bn(movie_bn());
  // if the movie is not watched the post level equals the prior level
  std::vector<Polynomial> eqs;
  for (int x1 = 1; x1 <= 3; ++x1)
    for (int x3 = 1; x3 <= 3; ++x3) {
      std::string name = "pi(X3=" + std::to_string(x3) + "|X1=" +
                         std::to_string(x1) + ",X2=2)";
      auto v = Polynomial::variable(model.table, *model.table->find(name));
      Rational target = (x1 == x3) ? Rational(1) : Rational(0);
      eqs.push_back(v - Polynomial::constant(model.table, target));
    }
  auto pinned = add_constraints(model, eqs, {});
  CHECK(pinned.chain_count() == 24);
  CHECK(pinned.pinned.size() == 9);
  CHECK(pinned.blocks.size() == 11);
  CHECK(pinned.free_dimension() == 15);
  CHECK(pinned.equalities.empty());
  // surviving no-movie chains lost their X3 factor
  int deg3 = 0;
  for (const auto& atom : pinned.atoms)
    if (atom.total_degree() == 3) ++deg3;
  CHECK(deg3 == 6);
  CHECK_THROWS_AS(pinned.find_chain("p(1,2,2,1)"), Error);
  int i = pinned.find_chain("p(1,2,1,1)");
  CHECK(pinned.bn->factor_vars[i][2] == -1);
  // atom-sum oracle still holds on the submodel
  std::mt19937_64 rng(5);
  CHECK(atom_sum_at(pinned, random_block_point(pinned, rng)) == Rational(1));
}

TEST_CASE("add_constraints: sibling inference from a partial pinning") {
  BNSpec spec;
  spec.variables = {{"X", 3, {}}};
  auto model = compile_bn(spec);
  auto v1 = Polynomial::variable(model.table, model.blocks[0].vars[0]);
  auto one = Polynomial::constant(model.table, Rational(1));
  auto sub = add_constraints(model, {v1 - one}, {});
  // pinning pi(X=1)=1 forces the siblings to zero and resolves the block
  CHECK(sub.pinned.size() == 3);
  CHECK(sub.blocks.empty());
  CHECK(sub.chain_count() == 1);
  CHECK(sub.atoms[0].is_constant());
  CHECK(sub.atoms[0].constant_value() == Rational(1));
}

TEST_CASE("add_constraints: semiparametric auxiliary constraint") {
  auto model = compile_bn(movie_bn());
  int r32 = model.table->add("r32", VarKind::Auxiliary);
  auto eq = parse_polynomial("pi(X3=1|X1=2,X2=1) - r32 * pi(X3=1|X1=1,X2=1)",
                             model.table);
  auto ineq = parse_polynomial("pi(X3=1|X1=1,X2=1) - pi(X3=1|X1=2,X2=1)",
                               model.table);
  auto sub = add_constraints(model, {eq}, {{ineq, IneqRel::GreaterEqual}});
  REQUIRE(sub.equalities.size() == 1);
  CHECK(sub.equalities[0] == eq);
  REQUIRE(sub.inequalities.size() == 1);
  CHECK(sub.auxiliary == std::vector<int>{r32});
  CHECK(sub.atoms.size() == 36);  // a general equality prunes nothing
}
