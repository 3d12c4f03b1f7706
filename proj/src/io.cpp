#include "minesweeper/io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace minesweeper {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> splitVars(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (part.empty()) throw std::invalid_argument("empty variable in atom");
    out.push_back(part);
  }
  return out;
}

}  // namespace

ParsedQuery parseQuery(const std::string& text) {
  static const std::regex atomRe(R"(\s*([A-Za-z_]\w*)\s*\(([^()]*)\)\s*)");
  static const std::regex identRe(R"([A-Za-z_]\w*)");
  std::string s = trim(text);
  if (s.empty() || s.back() != '.') throw std::invalid_argument("query must end with '.'");
  s.pop_back();
  auto arrow = s.find(":-");
  if (arrow == std::string::npos) throw std::invalid_argument("query needs ':-'");

  auto parseAtom = [&](const std::string& t) {
    std::smatch m;
    if (!std::regex_match(t, m, atomRe)) throw std::invalid_argument("malformed atom: " + trim(t));
    std::vector<std::string> vars = splitVars(m[2]);
    for (const auto& v : vars)
      if (!std::regex_match(v, identRe)) throw std::invalid_argument("malformed variable: " + v);
    return std::make_pair(m[1].str(), vars);
  };

  ParsedQuery q;
  auto [head, headVars] = parseAtom(s.substr(0, arrow));
  q.head = head;

  // Split the body at top-level commas.
  std::vector<std::string> atomTexts;
  std::string body = s.substr(arrow + 2), cur;
  int depth = 0;
  for (char c : body) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw std::invalid_argument("unbalanced parentheses");
    if (c == ',' && depth == 0) {
      atomTexts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced parentheses");
  atomTexts.push_back(cur);

  std::vector<std::string> names;
  std::map<std::string, AttrId> ids;
  auto idOf = [&](const std::string& v) {
    auto [it, fresh] = ids.try_emplace(v, static_cast<AttrId>(names.size()));
    if (fresh) names.push_back(v);
    return it->second;
  };
  for (const auto& v : headVars) idOf(v);

  std::set<std::string> atomNames;
  std::set<AttrId> used;
  std::vector<std::pair<std::string, std::vector<AttrId>>> edges;
  for (const auto& at : atomTexts) {
    auto [name, vars] = parseAtom(at);
    if (!atomNames.insert(name).second) throw std::invalid_argument("duplicate atom name " + name);
    AtomSchema schema{name, {}};
    for (const auto& v : vars) {
      AttrId id = idOf(v);
      for (AttrId prev : schema.attrs)
        if (prev == id) throw std::invalid_argument("variable " + v + " repeats in atom " + name);
      schema.attrs.push_back(id);
      used.insert(id);
    }
    edges.emplace_back(name, schema.attrs);
    q.atoms.push_back(std::move(schema));
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!used.count(static_cast<AttrId>(i)))
      throw std::invalid_argument("variable " + names[i] + " occurs in no atom");
  q.query = Hypergraph(names, edges);
  return q;
}

std::string formatQuery(const ParsedQuery& q) {
  const auto& names = q.query.attributes();
  std::ostringstream os;
  os << q.head << '(';
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << ") :- ";
  for (std::size_t a = 0; a < q.atoms.size(); ++a) {
    os << (a ? ", " : "") << q.atoms[a].name << '(';
    for (std::size_t j = 0; j < q.atoms[a].attrs.size(); ++j)
      os << (j ? "," : "") << names[static_cast<std::size_t>(q.atoms[a].attrs[j])];
    os << ')';
  }
  os << '.';
  return os.str();
}

std::vector<std::vector<std::string>> readTable(const std::string& path, std::size_t arity,
                                                const IngestOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t lineNo = 0;
  bool skipHeader = opts.header;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (skipHeader) {
      skipHeader = false;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, opts.delimiter)) fields.push_back(trim(f));
    if (line.back() == opts.delimiter) fields.emplace_back();
    if (fields.size() != arity)
      throw DataError(path + ":" + std::to_string(lineNo) + ": expected " + std::to_string(arity) +
                      " fields, got " + std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }
  return rows;
}

Relation encodeRelation(const AtomSchema& schema, const std::vector<std::vector<std::string>>& rows,
                        const Dictionary& dict) {
  Relation r{schema.name, schema.attrs, {}};
  for (const auto& row : rows) {
    if (row.size() != schema.attrs.size()) throw DataError("arity mismatch in " + schema.name);
    std::vector<Value> t;
    for (const auto& f : row) t.push_back(dict.encode(f));
    r.tuples.push_back(std::move(t));
  }
  r.normalize();
  return r;
}

Instance loadInstance(const ParsedQuery& q, const std::string& dir, const IngestOptions& opts,
                      Dictionary& dict) {
  namespace fs = std::filesystem;
  std::vector<std::vector<std::vector<std::string>>> tables;
  for (const auto& atom : q.atoms) {
    fs::path found;
    for (const char* ext : {".tsv", ".csv", ".txt"}) {
      fs::path p = fs::path(dir) / (atom.name + ext);
      if (fs::exists(p)) {
        found = p;
        break;
      }
    }
    if (found.empty()) throw DataError("no data file for " + atom.name + " in " + dir);
    IngestOptions o = opts;
    if (found.extension() == ".csv" && opts.delimiter == '\t') o.delimiter = ',';
    tables.push_back(readTable(found.string(), atom.attrs.size(), o));
    for (const auto& row : tables.back())
      for (const auto& f : row) dict.add(f);
  }
  dict.finalize();
  Instance inst{q.query, {}};
  for (std::size_t i = 0; i < q.atoms.size(); ++i) inst.relations.push_back(encodeRelation(q.atoms[i], tables[i], dict));
  inst.validate();
  return inst;
}

void writeInstance(const Instance& inst, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const auto& r : inst.relations) {
    fs::path p = fs::path(dir) / (r.name + ".tsv");
    std::ofstream out(p);
    if (!out) throw DataError("cannot write " + p.string());
    for (const auto& t : r.tuples) {
      for (std::size_t j = 0; j < t.size(); ++j) out << (j ? "\t" : "") << t[j];
      out << '\n';
    }
  }
}

}  // namespace minesweeper
