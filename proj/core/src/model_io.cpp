#include "causalg/model_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "causalg/parser.hpp"
#include "json.hpp"

namespace causalg {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       const std::string& msg) {
  throw ParseError(origin + ": " + msg, line);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Lines with their 1-based numbers, comments and blanks stripped.
std::vector<std::pair<std::size_t, std::string>> logical_lines(
    const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (!line.empty()) out.push_back({n, line});
  }
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

/// Splits at the first occurrence of `c` outside parentheses, or npos.
std::size_t top_level(const std::string& s, char c, std::size_t from = 0) {
  int depth = 0;
  for (std::size_t i = from; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == c && depth == 0) return i;
  }
  return std::string::npos;
}

/// Parses an expression over the model's existing variables; identifiers
/// not already on the table are rejected, pinned variables substituted.
Polynomial parse_expr(const std::string& text, const CompiledModel& model,
                      const std::string& origin, std::size_t line) {
  int before = model.table->size();
  Polynomial p;
  try {
    p = parse_polynomial(text, model.table, VarKind::Parameter);
  } catch (const ParseError& e) {
    fail(origin, line, std::string(e.what()) + " in '" + text + "'");
  }
  for (int v = before; v < model.table->size(); ++v)
    fail(origin, line, "unknown variable '" + model.table->name(v) + "'");
  for (int v : p.support()) {
    auto pin = model.pinned.find(v);
    if (pin != model.pinned.end())
      p = p.substitute(v, Polynomial::constant(model.table, pin->second));
  }
  return p;
}

int expect_int(const std::string& token, const std::string& origin,
               std::size_t line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  fail(origin, line, "expected an integer, got '" + token + "'");
}

/// Shared eq:/ineq:/aux parsing for model and constraint files. Returns
/// false when the line belongs to neither form.
bool constraint_line(const std::string& line, std::size_t n,
                     const std::string& origin, ConstraintFile& out) {
  if (line.rfind("aux ", 0) == 0) {
    auto w = words(line);
    if (w.size() != 4 || w[2] != "in" || w[3] != "[0,1]")
      fail(origin, n, "expected 'aux <name> in [0,1]'");
    out.aux_names.push_back(w[1]);
    return true;
  }
  if (line.rfind("eq:", 0) == 0) {
    std::string body = trim(line.substr(3));
    if (top_level(body, '=') == std::string::npos)
      fail(origin, n, "expected 'eq: <expr> = <expr>'");
    out.eq_lines.push_back(body);
    return true;
  }
  if (line.rfind("ineq:", 0) == 0) {
    std::string body = trim(line.substr(5));
    auto gt = top_level(body, '>');
    if (gt == std::string::npos)
      fail(origin, n, "expected 'ineq: <expr> > 0' or '>= 0'");
    IneqRel rel = IneqRel::Greater;
    std::string rhs = trim(body.substr(gt + 1));
    if (!rhs.empty() && rhs[0] == '=') {
      rel = IneqRel::GreaterEqual;
      rhs = trim(rhs.substr(1));
    }
    if (rhs != "0") fail(origin, n, "inequality right side must be 0");
    out.ineq_lines.push_back({trim(body.substr(0, gt)), rel});
    return true;
  }
  return false;
}

/// `pihat(...)` names the post-manipulation primitive of the same edge.
std::string resolve_pihat(std::string text) {
  std::size_t at = 0;
  while ((at = text.find("pihat(", at)) != std::string::npos) {
    if (at > 0 && (std::isalnum(text[at - 1]) || text[at - 1] == '_')) {
      at += 6;
      continue;
    }
    text.erase(at + 2, 3);  // pihat( -> pi(
    at += 3;
  }
  return text;
}

std::string dot_id(const std::string& id) { return "\"" + id + "\""; }

/// index_of throws on unknown names; the parsers want -1 for diagnostics.
int bn_index(const BNSpec& spec, const std::string& name) {
  for (std::size_t i = 0; i < spec.variables.size(); ++i)
    if (spec.variables[i].name == name) return static_cast<int>(i);
  return -1;
}

int vertex_index(const std::vector<std::string>& ids,
                 const std::string& id) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return static_cast<int>(i);
  return -1;
}

std::string strip_quotes(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    s = s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

ModelFile parse_model_text(const std::string& text, const std::string& origin) {
  ModelFile out;
  ConstraintFile constraints;
  bool have_header = false;
  for (const auto& [n, line] : logical_lines(text)) {
    if (!have_header) {
      auto w = words(line);
      if (w.size() != 3 || w[0] != "model")
        fail(origin, n, "expected 'model bn|tree|poset <name>'");
      if (w[1] == "bn") out.kind = ModelKind::BN;
      else if (w[1] == "tree") out.kind = ModelKind::Tree;
      else if (w[1] == "poset") out.kind = ModelKind::Poset;
      else fail(origin, n, "unknown model kind '" + w[1] + "'");
      out.name = w[2];
      have_header = true;
      continue;
    }
    if (constraint_line(line, n, origin, constraints)) continue;
    auto w = words(line);
    if (out.kind == ModelKind::BN) {
      if (w.size() == 4 && w[0] == "var" && w[2] == "levels") {
        out.bn.variables.push_back({w[1], expect_int(w[3], origin, n), {}});
      } else if (w.size() >= 2 && w[0] == "parents" && w[1].back() == ':') {
        std::string child = w[1].substr(0, w[1].size() - 1);
        int ci = bn_index(out.bn, child);
        if (ci < 0) fail(origin, n, "unknown variable '" + child + "'");
        for (std::size_t i = 2; i < w.size(); ++i) {
          int pi = bn_index(out.bn, w[i]);
          if (pi < 0) fail(origin, n, "unknown parent '" + w[i] + "'");
          out.bn.variables[ci].parents.push_back(pi);
        }
      } else {
        fail(origin, n, "unexpected line in a bn model: '" + line + "'");
      }
    } else {
      if (w[0] == "vertex" && (w.size() == 2 || w.size() == 3)) {
        bool terminal = w.size() == 3 && w[2] == "terminal";
        if (w.size() == 3 && !terminal)
          fail(origin, n, "expected 'vertex <id> [terminal]'");
        if (out.kind == ModelKind::Tree) {
          if (terminal)
            fail(origin, n, "tree leaves are implicit, drop 'terminal'");
          out.tree.vertices.push_back(w[1]);
        } else {
          out.poset.vertices.push_back({w[1], terminal});
        }
      } else if (w.size() == 4 && w[0] == "edge" && w[2] == "->") {
        auto resolve = [&](const std::string& id) {
          std::vector<std::string> ids;
          if (out.kind == ModelKind::Tree) {
            ids = out.tree.vertices;
          } else {
            for (const auto& v : out.poset.vertices) ids.push_back(v.id);
          }
          int i = vertex_index(ids, id);
          if (i < 0) fail(origin, n, "unknown vertex '" + id + "'");
          return i;
        };
        int a = resolve(w[1]), b = resolve(w[3]);
        if (out.kind == ModelKind::Tree) out.tree.edges.push_back({a, b});
        else out.poset.edges.push_back({a, b});
      } else {
        fail(origin, n, "unexpected line in a tree/poset model: '" + line +
                            "'");
      }
    }
  }
  if (!have_header) fail(origin, 1, "empty model file");
  out.aux_names = constraints.aux_names;
  out.eq_lines = constraints.eq_lines;
  out.ineq_lines = constraints.ineq_lines;
  return out;
}

ModelFile parse_model_file(const std::string& path) {
  return parse_model_text(read_file(path), path);
}

ConstraintFile parse_constraint_text(const std::string& text,
                                     const std::string& origin) {
  ConstraintFile out;
  for (const auto& [n, line] : logical_lines(text))
    if (!constraint_line(line, n, origin, out))
      fail(origin, n, "expected an aux/eq:/ineq: line, got '" + line + "'");
  return out;
}

ConstraintFile parse_constraint_file(const std::string& path) {
  return parse_constraint_text(read_file(path), path);
}

CompiledModel apply_constraints(const CompiledModel& model,
                                const ConstraintFile& constraints,
                                const std::string& origin) {
  for (const auto& name : constraints.aux_names) {
    if (auto existing = model.table->find(name)) {
      if (model.table->kind(*existing) != VarKind::Auxiliary)
        throw Error(origin + ": '" + name + "' is not an auxiliary variable");
    } else {
      model.table->add(name, VarKind::Auxiliary);
    }
  }
  std::vector<Polynomial> eqs;
  for (const auto& body : constraints.eq_lines) {
    auto at = top_level(body, '=');
    eqs.push_back(parse_expr(body.substr(0, at), model, origin, 0) -
                  parse_expr(body.substr(at + 1), model, origin, 0));
  }
  std::vector<std::pair<Polynomial, IneqRel>> ineqs;
  for (const auto& [body, rel] : constraints.ineq_lines)
    ineqs.push_back({parse_expr(body, model, origin, 0), rel});
  if (eqs.empty() && ineqs.empty() && constraints.aux_names.empty())
    return model;
  return add_constraints(model, eqs, ineqs);
}

CompiledModel compile_model_file(const ModelFile& file) {
  switch (file.kind) {
    case ModelKind::BN: return compile_bn(file.bn);
    case ModelKind::Tree: return compile_tree(file.tree);
    default: return compile_poset(file.poset);
  }
}

CompiledModel load_model(const std::string& model_path,
                         const std::vector<std::string>& constraint_paths) {
  ModelFile file = parse_model_file(model_path);
  CompiledModel model = compile_model_file(file);
  model = apply_constraints(
      model, {file.aux_names, file.eq_lines, file.ineq_lines}, model_path);
  for (const auto& path : constraint_paths)
    model = apply_constraints(model, parse_constraint_file(path), path);
  return model;
}

ManifestSpec parse_manifest_text(const std::string& text,
                                 const CompiledModel& model,
                                 const std::string& origin) {
  ManifestSpec out;
  bool have_header = false;
  for (const auto& [n, line] : logical_lines(text)) {
    if (!have_header) {
      auto w = words(line);
      if (w.size() != 2 || w[0] != "manifest")
        fail(origin, n, "expected 'manifest <name>'");
      out.name = w[1];
      have_header = true;
      continue;
    }
    if (line.rfind("obs ", 0) == 0) {
      std::string body = trim(line.substr(4));
      auto at = top_level(body, '=');
      if (at == std::string::npos)
        fail(origin, n, "expected 'obs <name> = <expr>'");
      std::string name = trim(body.substr(0, at));
      if (name.empty()) fail(origin, n, "empty observable name");
      out.observables.push_back(
          {name, parse_expr(body.substr(at + 1), model, origin, n)});
      continue;
    }
    ConstraintFile extra;
    if (constraint_line(line, n, origin, extra) && extra.eq_lines.empty() &&
        extra.aux_names.empty()) {
      for (const auto& [body, rel] : extra.ineq_lines) {
        if (rel != IneqRel::Greater)
          fail(origin, n, "manifest inequalities are strict (> 0)");
        out.inequalities.push_back(parse_expr(body, model, origin, n));
      }
      continue;
    }
    fail(origin, n, "expected an obs or ineq: line, got '" + line + "'");
  }
  if (!have_header) fail(origin, 1, "empty manifest file");
  return out;
}

ManifestSpec load_manifest(const std::string& path,
                           const CompiledModel& model) {
  return parse_manifest_text(read_file(path), model, path);
}

EffectSpec parse_effect_text(const std::string& text,
                             const CompiledModel& model,
                             const std::string& origin) {
  auto lines = logical_lines(text);
  if (lines.size() != 1 || lines[0].second.rfind("effect ", 0) != 0)
    fail(origin, lines.empty() ? 1 : lines[0].first,
         "expected a single 'effect <name> = <expr>' line");
  auto [n, line] = lines[0];
  std::string body = trim(line.substr(7));
  auto at = top_level(body, '=');
  if (at == std::string::npos)
    fail(origin, n, "expected 'effect <name> = <expr>'");
  EffectSpec out;
  out.name = trim(body.substr(0, at));
  if (out.name.empty()) fail(origin, n, "empty effect name");
  out.expression =
      parse_expr(resolve_pihat(body.substr(at + 1)), model, origin, n);
  return out;
}

EffectSpec load_effect(const std::string& path, const CompiledModel& model) {
  return parse_effect_text(read_file(path), model, path);
}

ManipulationSpec parse_manipulation_text(const std::string& text,
                                         const CompiledModel& model,
                                         const std::string& origin) {
  ManipulationSpec out;
  for (const auto& [n, line] : logical_lines(text)) {
    if (line.rfind("do ", 0) == 0) {
      auto w = words(line);
      if (w.size() != 4 || w[2] != "=")
        fail(origin, n, "expected 'do <var> = <value>'");
      if (!model.bn)
        fail(origin, n, "'do' lines need a BN model; use 'set' instead");
      int var = bn_index(model.bn->spec, w[1]);
      if (var < 0) fail(origin, n, "unknown BN variable '" + w[1] + "'");
      out.do_values.push_back({var, expect_int(w[3], origin, n)});
    } else if (line.rfind("set ", 0) == 0) {
      std::string body = resolve_pihat(trim(line.substr(4)));
      auto at = top_level(body, '=');
      if (at == std::string::npos)
        fail(origin, n, "expected 'set <edge> = <expr>'");
      std::string edge = trim(body.substr(0, at));
      auto var = model.table->find(edge);
      if (!var) fail(origin, n, "unknown edge variable '" + edge + "'");
      out.definitions[*var] =
          parse_expr(body.substr(at + 1), model, origin, n);
    } else {
      fail(origin, n, "expected a do/set line, got '" + line + "'");
    }
  }
  return out;
}

ManipulationSpec load_manipulation(const std::string& path,
                                   const CompiledModel& model) {
  return parse_manipulation_text(read_file(path), model, path);
}

EventSpec parse_event(const std::string& text, const CompiledModel& model) {
  EventSpec out;
  std::size_t from = 0;
  while (from <= text.size()) {
    auto comma = top_level(text, ',', from);
    std::string token =
        trim(text.substr(from, comma == std::string::npos ? std::string::npos
                                                          : comma - from));
    from = comma == std::string::npos ? text.size() + 1 : comma + 1;
    if (token.empty()) continue;
    if (top_level(token, '=') != std::string::npos) {
      auto at = token.find('=');
      std::string name = trim(token.substr(0, at));
      if (!model.bn) throw Error("value events need a BN model");
      int var = bn_index(model.bn->spec, name);
      if (var < 0) throw Error("unknown BN variable '" + name + "'");
      out.values.push_back({var, expect_int(trim(token.substr(at + 1)),
                                            "event", 0)});
    } else {
      out.atom_labels.push_back(token);
    }
  }
  if (!out.values.empty() && !out.atom_labels.empty())
    throw Error("an event uses either value constraints or atom labels");
  return out;
}

std::string export_dot(const ModelFile& file) {
  std::ostringstream out;
  out << "digraph " << file.name << " {\n";
  if (file.kind == ModelKind::BN) {
    for (const auto& v : file.bn.variables)
      out << "  " << dot_id(v.name) << ";\n";
    for (std::size_t i = 0; i < file.bn.variables.size(); ++i)
      for (int p : file.bn.variables[i].parents)
        out << "  " << dot_id(file.bn.variables[p].name) << " -> "
            << dot_id(file.bn.variables[i].name) << ";\n";
  } else {
    HasseDiagram diagram = file.kind == ModelKind::Tree
                               ? HasseDiagram::from_tree(file.tree)
                               : file.poset;
    for (const auto& v : diagram.vertices) {
      out << "  " << dot_id(v.id);
      if (v.terminal) out << " [terminal=true, shape=doublecircle]";
      out << ";\n";
    }
    for (const auto& [a, b] : diagram.edges)
      out << "  " << dot_id(diagram.vertices[a].id) << " -> "
          << dot_id(diagram.vertices[b].id) << ";\n";
  }
  out << "}\n";
  return out.str();
}

HasseDiagram import_dot(const std::string& text) {
  auto open = text.find('{');
  auto close = text.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ParseError("not a DOT digraph", 0);
  HasseDiagram out;
  auto intern = [&](const std::string& id) {
    for (std::size_t i = 0; i < out.vertices.size(); ++i)
      if (out.vertices[i].id == id) return static_cast<int>(i);
    out.vertices.push_back({id, false});
    return static_cast<int>(out.vertices.size()) - 1;
  };
  std::string body = text.substr(open + 1, close - open - 1);
  std::size_t from = 0;
  while (from < body.size()) {
    auto end = body.find_first_of(";\n", from);
    if (end == std::string::npos) end = body.size();
    std::string stmt = trim(body.substr(from, end - from));
    from = end + 1;
    if (stmt.empty()) continue;
    std::string attrs;
    auto bracket = stmt.find('[');
    if (bracket != std::string::npos) {
      attrs = stmt.substr(bracket);
      stmt = trim(stmt.substr(0, bracket));
    }
    auto arrow = stmt.find("->");
    if (arrow != std::string::npos) {
      int a = intern(strip_quotes(stmt.substr(0, arrow)));
      int b = intern(strip_quotes(stmt.substr(arrow + 2)));
      out.edges.push_back({a, b});
    } else {
      int v = intern(strip_quotes(stmt));
      if (attrs.find("terminal=true") != std::string::npos)
        out.vertices[v].terminal = true;
    }
  }
  return out;
}

std::string joint_lines(const CompiledModel& model, const JointPoint& joint) {
  std::ostringstream out;
  for (int i = 0; i < model.chain_count(); ++i) {
    nlohmann::json record;
    record["chain"] = model.chain_list[i].label;
    record["prob"] = to_string(joint.probabilities[i]);
    out << record.dump() << "\n";
  }
  return out.str();
}

}  // namespace causalg
