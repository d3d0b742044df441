#include "pgkit/export.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "pgkit/combinat.hpp"
#include "pgkit/errors.hpp"
#include "pgkit/version.hpp"

namespace pgkit {
namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

void check_naming(const Geometry& g, std::size_t num_spreads, std::size_t num_packings,
                  const EmissionConfig& cfg) {
  for (const std::string* p :
       {&cfg.point_prefix, &cfg.line_prefix, &cfg.spread_prefix, &cfg.packing_prefix})
    if (!valid_identifier(*p)) throw Error("naming prefix '" + *p + "' is not a valid identifier");
  std::set<std::string> names = {"Point", "Line",    "incid_lp", "spreads",
                                 "f_a1",  "f_a3_3",  "packings"};
  auto add = [&names](const std::string& prefix, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i)
      if (!names.insert(prefix + std::to_string(i)).second)
        throw Error("naming scheme produces duplicate identifier '" + prefix +
                    std::to_string(i) + "'");
  };
  add(cfg.point_prefix, static_cast<std::size_t>(g.num_points()));
  add(cfg.line_prefix, static_cast<std::size_t>(g.num_lines()));
  add(cfg.spread_prefix, num_spreads);
  add(cfg.packing_prefix, num_packings);
}

void emit_inductive(std::ostringstream& out, const std::string& type_name,
                    const std::string& prefix, int count) {
  out << "Inductive " << type_name << " :=\n";
  for (int i = 0; i < count; ++i) {
    if (i % 10 == 0) out << "|";
    out << " " << prefix << i;
    bool row_end = (i % 10 == 9) || (i == count - 1);
    if (i == count - 1)
      out << " .\n";
    else if (row_end)
      out << "\n";
    else
      out << " |";
  }
  out << "\n";
}

void emit_list_def(std::ostringstream& out, const std::string& name,
                   const std::string& elem_prefix, const std::vector<int>& elems) {
  out << "Definition " << name << " := [";
  for (std::size_t i = 0; i < elems.size(); ++i)
    out << (i == 0 ? " " : "; ") << elem_prefix << elems[i];
  out << " ].\n";
}

}  // namespace

std::string emit_incidence_txt(const Geometry& g) {
  std::ostringstream out;
  for (const LineRec& l : g.lines()) {
    for (std::size_t i = 0; i < l.point_list.size(); ++i) {
      if (i) out << ' ';
      out << l.point_list[i];
    }
    out << '\n';
  }
  return out.str();
}

std::string emit_proof_source(const Geometry& g, const std::vector<Spread>& spreads,
                              const std::vector<Packing>& packings, const EmissionConfig& cfg,
                              const SkolemTables* skolem) {
  check_naming(g, spreads.size(), packings.size(), cfg);
  const std::string& P = cfg.point_prefix;
  const std::string& L = cfg.line_prefix;
  std::ostringstream out;

  if (cfg.include_geometry) {
    emit_inductive(out, "Point", P, g.num_points());
    emit_inductive(out, "Line", L, g.num_lines());
    out << "Definition incid_lp (p:Point) (l:Line) : bool :=\n";
    out << "match l with\n";
    for (const LineRec& l : g.lines()) {
      out << "| " << L << l.index << " => match p with ";
      for (std::size_t i = 0; i < l.point_list.size(); ++i)
        out << (i ? " | " : "") << P << l.point_list[i];
      out << " => true | _ => false end\n";
    }
    out << "end.\n\n";
  }

  if (cfg.include_spreads && !spreads.empty()) {
    for (std::size_t i = 0; i < spreads.size(); ++i)
      emit_list_def(out, cfg.spread_prefix + std::to_string(i), L, spreads[i].lines);
    out << "Definition spreads := [";
    for (std::size_t i = 0; i < spreads.size(); ++i)
      out << (i ? " ; " : " ") << cfg.spread_prefix << i;
    out << " ].\n\n";
  }

  if (cfg.include_packings && !packings.empty()) {
    for (std::size_t i = 0; i < packings.size(); ++i)
      emit_list_def(out, cfg.packing_prefix + std::to_string(i), cfg.spread_prefix,
                    packings[i].spreads);
    out << "Definition packings := [";
    for (std::size_t i = 0; i < packings.size(); ++i)
      out << (i ? " ; " : " ") << cfg.packing_prefix << i;
    out << " ].\n\n";
  }

  if (skolem != nullptr) {
    out << "Definition f_a1 (a:Point) (b:Point) : Line :=\n";
    out << "match a with\n";
    for (int a = 0; a < skolem->num_points; ++a) {
      out << "| " << P << a << " => match b with ";
      bool first = true;
      for (int b = 0; b < skolem->num_points; ++b) {
        int l = skolem->f_a1_at(a, b);
        if (l < 0) continue;
        out << (first ? "" : " | ") << P << b << " => " << L << l;
        first = false;
      }
      out << " | _ => " << L << "0 end\n";
    }
    out << "end.\n\n";

    const int nl = skolem->f_a3_3.num_lines();
    out << "Definition f_a3_3 (l1:Line) (l2:Line) (l3:Line) : Line :=\n";
    out << "match l1 with\n";
    for (int l1 = 0; l1 + 2 < nl; ++l1) {
      out << "| " << L << l1 << " => match l2 with\n";
      for (int l2 = l1 + 1; l2 + 1 < nl; ++l2) {
        out << "  | " << L << l2 << " => match l3 with ";
        bool first = true;
        for (int l3 = l2 + 1; l3 < nl; ++l3) {
          const TransversalEntry& e =
              skolem->f_a3_3.at_rank(static_cast<std::size_t>(triple_rank(l1, l2, l3, nl)));
          out << (first ? "" : " | ") << L << l3 << " => " << L << e.l4;
          first = false;
        }
        out << " | _ => " << L << "0 end\n";
      }
      out << "  | _ => " << L << "0 end\n";
    }
    out << "| _ => " << L << "0\nend.\n";
  }
  return out.str();
}

namespace {

struct Token {
  std::string text;
  bool word = false;
};

std::vector<Token> tokenize_source(const std::string& text, std::vector<std::string>& diags) {
  std::vector<Token> toks;
  std::size_t i = 0;
  int comment_depth = 0;
  while (i < text.size()) {
    char c = text[i];
    if (comment_depth > 0) {
      if (c == '*' && i + 1 < text.size() && text[i + 1] == ')') {
        --comment_depth;
        i += 2;
      } else if (c == '(' && i + 1 < text.size() && text[i + 1] == '*') {
        ++comment_depth;
        i += 2;
      } else {
        ++i;
      }
      continue;
    }
    if (c == '(' && i + 1 < text.size() && text[i + 1] == '*') {
      ++comment_depth;
      i += 2;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      toks.push_back({text.substr(i, j - i), true});
      i = j;
      continue;
    }
    toks.push_back({std::string(1, c), false});
    ++i;
  }
  if (comment_depth > 0) diags.push_back("unterminated comment");
  return toks;
}

}  // namespace

std::vector<std::string> validate_proof_source(const std::string& text) {
  std::vector<std::string> diags;
  std::vector<Token> toks = tokenize_source(text, diags);
  std::set<std::string> known = {"match", "with", "end",  "true", "false",
                                 "bool",  "_",    "Type", "list"};
  std::set<std::string> defined;
  std::size_t i = 0;
  auto at = [&](std::size_t k) -> const Token* { return k < toks.size() ? &toks[k] : nullptr; };
  while (i < toks.size()) {
    const Token& head = toks[i];
    if (!head.word || (head.text != "Inductive" && head.text != "Definition")) {
      diags.push_back("statement does not start with Inductive or Definition (near '" +
                      head.text + "')");
      return diags;
    }
    const Token* name = at(i + 1);
    if (name == nullptr || !name->word) {
      diags.push_back("missing name after " + head.text);
      return diags;
    }
    if (!defined.insert(name->text).second)
      diags.push_back("duplicate identifier '" + name->text + "'");
    known.insert(name->text);
    std::size_t j = i + 2;
    // Parameters and return type run up to the ':=' separator.
    std::set<std::string> params;
    while (j < toks.size() && !(toks[j].text == ":" && at(j + 1) && at(j + 1)->text == "=")) {
      if (toks[j].text == "(") {
        std::size_t k = j + 1;
        while (k < toks.size() && toks[k].text != ":" && toks[k].text != ")") {
          if (toks[k].word) params.insert(toks[k].text);
          ++k;
        }
      }
      ++j;
    }
    if (j >= toks.size()) {
      diags.push_back("missing ':=' in statement '" + name->text + "'");
      return diags;
    }
    j += 2;  // skip := pair
    // Body runs to the terminating '.' at zero bracket/match depth.
    int brackets = 0;
    int matches = 0;
    bool terminated = false;
    bool is_inductive = head.text == "Inductive";
    for (; j < toks.size(); ++j) {
      const Token& t = toks[j];
      if (t.word) {
        if (t.text == "match") {
          ++matches;
        } else if (t.text == "end") {
          if (--matches < 0) {
            diags.push_back("'end' without 'match' in '" + name->text + "'");
            matches = 0;
          }
        } else if (is_inductive) {
          if (!known.insert(t.text).second)  // constructor declaration
            diags.push_back("duplicate identifier '" + t.text + "'");
        } else if (!known.count(t.text) && !params.count(t.text)) {
          diags.push_back("unknown identifier '" + t.text + "' in '" + name->text + "'");
        }
        continue;
      }
      if (t.text == "[") ++brackets;
      if (t.text == "]" && --brackets < 0) {
        diags.push_back("']' without '[' in '" + name->text + "'");
        brackets = 0;
      }
      if (t.text == "=" && at(j + 1) && at(j + 1)->text == ">" && matches == 0 && !is_inductive)
        diags.push_back("'=>' outside of match in '" + name->text + "'");
      if (t.text == "." && brackets == 0 && matches == 0) {
        terminated = true;
        ++j;
        break;
      }
    }
    if (!terminated) {
      if (matches > 0)
        diags.push_back("unbalanced match/end in '" + name->text + "'");
      else if (brackets > 0)
        diags.push_back("unbalanced brackets in '" + name->text + "'");
      else
        diags.push_back("missing '.' terminating '" + name->text + "'");
      return diags;
    }
    i = j;
  }
  return diags;
}

nlohmann::ordered_json geometry_json(const Geometry& g) {
  nlohmann::ordered_json j;
  j["provenance"] = g.provenance() == Geometry::Provenance::kConstructed ? "constructed" : "loaded";
  j["source"] = g.source_name();
  j["n"] = g.n();
  j["order"] = g.order();
  j["num_points"] = g.num_points();
  j["num_lines"] = g.num_lines();
  j["points_per_line"] = g.points_per_line();
  nlohmann::ordered_json lines = nlohmann::ordered_json::array();
  for (const LineRec& l : g.lines()) lines.push_back(l.point_list);
  j["lines"] = std::move(lines);
  return j;
}

nlohmann::ordered_json axiom_json(const AxiomReport& r, bool include_timings) {
  nlohmann::ordered_json j;
  j["axiom"] = axiom_name(r.id);
  j["holds"] = r.holds;
  j["cases_checked"] = r.cases_checked;
  j["counterexample"] = r.counterexample;
  if (include_timings) j["timing_ms"] = r.timing_ms;
  return j;
}

nlohmann::ordered_json orbit_json(const OrbitReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = r.kind == ObjectKind::kSpread ? "spread" : "packing";
  j["orbit_count"] = r.orbit_count;
  j["orbit_sizes"] = r.orbit_sizes;
  j["representatives"] = r.representatives;
  j["class_of"] = r.class_of;
  return j;
}

nlohmann::ordered_json witness_json(int from, int to, const Collineation* c) {
  nlohmann::ordered_json j;
  j["from"] = from;
  j["to"] = to;
  j["exists"] = c != nullptr;
  if (c != nullptr) {
    j["point_perm"] = c->point_perm;
    j["line_perm"] = c->line_perm;
  }
  return j;
}

nlohmann::ordered_json emit_json(const Geometry& g, const std::vector<AxiomReport>& reports,
                                 const std::vector<Spread>& spreads,
                                 const std::vector<Packing>& packings, const EmissionConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["generator"] = {{"name", "pgkit"}, {"version", kVersion}};
  if (cfg.include_geometry) doc["geometry"] = geometry_json(g);
  if (cfg.include_axioms) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const AxiomReport& r : reports) arr.push_back(axiom_json(r, cfg.include_timings));
    doc["axioms"] = std::move(arr);
  }
  if (cfg.include_spreads) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Spread& s : spreads) arr.push_back({{"lines", s.lines}});
    doc["spreads"] = std::move(arr);
  }
  if (cfg.include_packings) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Packing& p : packings) arr.push_back({{"spreads", p.spreads}});
    doc["packings"] = std::move(arr);
  }
  return doc;
}

}  // namespace pgkit
