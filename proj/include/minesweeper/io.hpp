#pragma once

#include <string>
#include <vector>

#include "minesweeper/engine.hpp"
#include "minesweeper/storage.hpp"

namespace minesweeper {

/// Body atom as written: relation name and its variables in column order.
struct AtomSchema {
  std::string name;
  std::vector<AttrId> attrs;
};

struct ParsedQuery {
  std::string head;
  Hypergraph query;
  std::vector<AtomSchema> atoms;  // atom i is edge i
};

/// Parses `Q(A,B,C) :- R(A,B), S(B,C), T(A,C).` Attribute ids follow order of
/// first appearance (head first). Throws std::invalid_argument on malformed
/// text, repeated atom names, repeated variables inside an atom, and head
/// variables that occur in no atom.
ParsedQuery parseQuery(const std::string& text);

std::string formatQuery(const ParsedQuery& q);

struct IngestOptions {
  char delimiter = '\t';
  bool header = false;
  bool numeric = false;
};

/// Raw delimited rows. Throws DataError if the file cannot be read or a row
/// has the wrong number of fields.
std::vector<std::vector<std::string>> readTable(const std::string& path, std::size_t arity,
                                                const IngestOptions& opts);

/// Encodes rows with a finalized dictionary; result is deduplicated.
Relation encodeRelation(const AtomSchema& schema, const std::vector<std::vector<std::string>>& rows,
                        const Dictionary& dict);

/// Reads one file per atom (`<dir>/<Name>.tsv`, `.csv` or `.txt`) and encodes all
/// of them with one shared order-preserving dictionary.
Instance loadInstance(const ParsedQuery& q, const std::string& dir, const IngestOptions& opts,
                      Dictionary& dict);

/// Writes each relation of `inst` as `<dir>/<Name>.tsv` in atom column order.
void writeInstance(const Instance& inst, const std::string& dir);

}  // namespace minesweeper
