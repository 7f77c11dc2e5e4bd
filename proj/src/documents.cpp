// Copyright 2026 The qobs developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qobs/documents.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "qobs/errors.hpp"

namespace qobs {

namespace fs = std::filesystem;

const char* kind_name(StructureKind k) {
  switch (k) {
    case StructureKind::effect_algebra: return "effect_algebra";
    case StructureKind::mv_algebra: return "mv_algebra";
    case StructureKind::omp: return "omp";
    case StructureKind::boolean_algebra: return "boolean";
    case StructureKind::fuzzy: return "fuzzy";
    case StructureKind::hilbert: return "hilbert";
  }
  return "?";
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
  std::string full;  // comment-stripped line text

  bool is_directive() const { return tokens[0][0] == '@'; }
};

[[noreturn]] void parse_fail(const fs::path& path, int line,
                             const std::string& what) {
  fail(Errc::syntax_error,
       path.string() + ":" + std::to_string(line) + ": " + what);
}

void require_directive(const fs::path& path, const Line& line) {
  if (!line.is_directive())
    parse_fail(path, line.number,
               "expected an @directive, got '" + line.tokens[0] + "'");
}

std::vector<Line> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    fail(Errc::syntax_error, "cannot open '" + path.string() + "'");
  std::vector<Line> out;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    std::vector<std::string> tokens;
    std::string token;
    while (ss >> token) tokens.push_back(token);
    if (tokens.empty()) continue;
    Line line;
    line.number = number;
    line.tokens = std::move(tokens);
    line.full = text;
    out.push_back(std::move(line));
  }
  return out;
}

Rational parse_rational_at(const fs::path& path, int line,
                           const std::string& token) {
  try {
    return parse_rational(token);
  } catch (const Error&) {
    parse_fail(path, line, "malformed rational '" + token + "'");
  }
}

double parse_double_at(const fs::path& path, int line,
                       const std::string& token) {
  try {
    size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    parse_fail(path, line, "malformed number '" + token + "'");
  }
}

// `re`, `re+imj`, `re-imj`, or a bare imaginary `imj`; exponents allowed.
std::complex<double> parse_complex_at(const fs::path& path, int line,
                                      std::string token) {
  if (token.empty()) parse_fail(path, line, "empty matrix entry");
  bool imaginary = token.back() == 'j' || token.back() == 'J';
  size_t split = std::string::npos;
  for (size_t i = 1; i < token.size(); ++i) {
    if ((token[i] == '+' || token[i] == '-') &&
        token[i - 1] != 'e' && token[i - 1] != 'E')
      split = i;  // keep the last sign: the imaginary part starts there
  }
  if (imaginary && split != std::string::npos) {
    std::string re = token.substr(0, split);
    std::string im = token.substr(split, token.size() - split - 1);
    if (im == "+" || im == "-") im += "1";
    return {parse_double_at(path, line, re), parse_double_at(path, line, im)};
  }
  if (imaginary) {
    std::string im = token.substr(0, token.size() - 1);
    if (im.empty() || im == "+" || im == "-") im += "1";
    return {0.0, parse_double_at(path, line, im)};
  }
  return {parse_double_at(path, line, token), 0.0};
}

StructureKind parse_kind(const fs::path& path, int line,
                         const std::string& token) {
  if (token == "effect_algebra") return StructureKind::effect_algebra;
  if (token == "mv_algebra") return StructureKind::mv_algebra;
  if (token == "omp") return StructureKind::omp;
  if (token == "boolean") return StructureKind::boolean_algebra;
  if (token == "fuzzy") return StructureKind::fuzzy;
  if (token == "hilbert") return StructureKind::hilbert;
  parse_fail(path, line, "unknown kind '" + token + "'");
}

HilbertDocument load_hilbert_blocks(const fs::path& path,
                                    const std::vector<Line>& lines,
                                    size_t start) {
  HilbertDocument doc;
  size_t i = start;
  auto read_matrix = [&](int header_line) -> Matrix {
    if (doc.dim <= 0) parse_fail(path, header_line, "@dim must come first");
    Matrix m(doc.dim, doc.dim);
    for (int r = 0; r < doc.dim; ++r) {
      if (i >= lines.size() || lines[i].is_directive())
        parse_fail(path, header_line,
                   "expected " + std::to_string(doc.dim) + " matrix rows");
      // entries are comma-separated across the whole line
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream ss(lines[i].full);
      while (std::getline(ss, cell, ',')) {
        std::erase_if(cell, [](unsigned char c) { return std::isspace(c); });
        cells.push_back(cell);
      }
      if (int(cells.size()) != doc.dim)
        parse_fail(path, lines[i].number,
                   "expected " + std::to_string(doc.dim) + " entries");
      for (int c = 0; c < doc.dim; ++c)
        m(r, c) = parse_complex_at(path, lines[i].number, cells[c]);
      ++i;
    }
    return m;
  };
  while (i < lines.size()) {
    const Line& line = lines[i];
    require_directive(path, line);
    const auto& directive = line.tokens[0];
    if (directive == "@dim") {
      if (line.tokens.size() != 2)
        parse_fail(path, line.number, "@dim takes one argument");
      doc.dim = int(parse_double_at(path, line.number, line.tokens[1]));
      if (doc.dim < 1 || doc.dim > 64)
        parse_fail(path, line.number, "dimension out of range");
      ++i;
    } else if (directive == "@effect") {
      if (line.tokens.size() != 2)
        parse_fail(path, line.number, "@effect takes the outcome value");
      double t = parse_double_at(path, line.number, line.tokens[1]);
      ++i;
      doc.effects.push_back({t, read_matrix(line.number)});
    } else if (directive == "@rho") {
      if (doc.rho) parse_fail(path, line.number, "duplicate @rho block");
      ++i;
      doc.rho = read_matrix(line.number);
    } else {
      parse_fail(path, line.number,
                 "unexpected directive '" + directive + "' in hilbert document");
    }
  }
  if (doc.dim <= 0) parse_fail(path, 1, "hilbert document lacks @dim");
  return doc;
}

}  // namespace

LoadedStructure load_structure_document(const fs::path& path) {
  auto lines = read_lines(path);
  if (lines.empty()) fail(Errc::syntax_error, path.string() + ": empty document");

  if (lines[0].tokens[0] != "@kind" || lines[0].tokens.size() != 2)
    parse_fail(path, lines[0].number, "document must start with @kind <kind>");
  for (size_t i = 1; i < lines.size(); ++i)
    if (lines[i].tokens[0] == "@kind")
      parse_fail(path, lines[i].number, "duplicate @kind line");
  StructureKind declared = parse_kind(path, lines[0].number, lines[0].tokens[1]);
  std::optional<StructureKind> kind = declared;
  size_t body = 1;

  LoadedStructure out;
  out.kind = *kind;

  if (*kind == StructureKind::hilbert) {
    out.hilbert = load_hilbert_blocks(path, lines, body);
    return out;
  }

  if (*kind == StructureKind::fuzzy) {
    std::vector<std::string> omega;
    std::vector<std::vector<Rational>> functions;
    std::vector<std::string> names;
    for (size_t i = body; i < lines.size(); ++i) {
      const Line& line = lines[i];
      require_directive(path, line);
      if (line.tokens[0] == "@omega") {
        if (!omega.empty())
          parse_fail(path, line.number, "duplicate @omega line");
        omega.assign(line.tokens.begin() + 1, line.tokens.end());
        if (omega.empty()) parse_fail(path, line.number, "@omega needs labels");
      } else if (line.tokens[0] == "@function") {
        if (omega.empty())
          parse_fail(path, line.number, "@omega must come before @function");
        if (line.tokens.size() != omega.size() + 2)
          parse_fail(path, line.number,
                     "expected a name and " + std::to_string(omega.size()) +
                         " values");
        names.push_back(line.tokens[1]);
        std::vector<Rational> values;
        for (size_t c = 2; c < line.tokens.size(); ++c)
          values.push_back(parse_rational_at(path, line.number, line.tokens[c]));
        functions.push_back(std::move(values));
      } else {
        parse_fail(path, line.number,
                   "unexpected directive '" + line.tokens[0] + "' in fuzzy document");
      }
    }
    if (omega.empty()) parse_fail(path, lines.back().number, "missing @omega");
    out.fuzzy = make_fuzzy(omega, functions, names);
    out.structure = out.fuzzy->structure;
    return out;
  }

  // table kinds: effect_algebra, mv_algebra, omp, boolean
  RawStructureTable raw;
  std::map<std::string, ElementId> ids;
  std::optional<std::string> zero_name, one_name;
  std::vector<std::array<std::string, 3>> plus_rows;
  std::vector<int> plus_lines;
  for (size_t i = body; i < lines.size(); ++i) {
    const Line& line = lines[i];
    require_directive(path, line);
    const auto& directive = line.tokens[0];
    if (directive == "@element") {
      if (line.tokens.size() != 2)
        parse_fail(path, line.number, "@element takes one name");
      if (!ids.emplace(line.tokens[1], ElementId(raw.names.size())).second)
        parse_fail(path, line.number,
                   "duplicate element '" + line.tokens[1] + "'");
      raw.names.push_back(line.tokens[1]);
    } else if (directive == "@zero" || directive == "@one") {
      if (line.tokens.size() != 2)
        parse_fail(path, line.number, directive + " takes one name");
      auto& slot = directive == "@zero" ? zero_name : one_name;
      if (slot) parse_fail(path, line.number, "duplicate " + directive);
      slot = line.tokens[1];
    } else if (directive == "@plus") {
      if (line.tokens.size() != 4)
        parse_fail(path, line.number, "@plus takes three element names");
      plus_rows.push_back({line.tokens[1], line.tokens[2], line.tokens[3]});
      plus_lines.push_back(line.number);
    } else {
      parse_fail(path, line.number, "unexpected directive '" + directive + "'");
    }
  }
  if (raw.names.empty())
    parse_fail(path, lines.back().number, "no @element lines");
  raw.zero_name = zero_name.value_or("0");
  raw.one_name = one_name.value_or("1");
  for (const auto& name : {raw.zero_name, raw.one_name})
    if (!ids.count(name))
      parse_fail(path, lines.back().number,
                 "required element '" + name + "' is not declared");
  for (size_t r = 0; r < plus_rows.size(); ++r) {
    std::array<ElementId, 3> entry;
    for (int c = 0; c < 3; ++c) {
      auto it = ids.find(plus_rows[r][c]);
      if (it == ids.end())
        parse_fail(path, plus_lines[r],
                   "unknown element '" + plus_rows[r][c] + "'");
      entry[c] = it->second;
    }
    raw.entries.push_back(entry);
  }

  out.structure = validate_structure(raw);
  const Flavor& flavor = out.structure->flavor();
  switch (*kind) {
    case StructureKind::mv_algebra:
      if (!flavor.mv)
        fail(Errc::kind_mismatch,
             path.string() + ": declared mv_algebra but the mv flag "
             "was not verified");
      out.mv = to_mv(out.structure);
      break;
    case StructureKind::omp:
      if (!flavor.orthomodular_poset)
        fail(Errc::kind_mismatch,
             path.string() + ": declared omp but the omp flag was not verified");
      break;
    case StructureKind::boolean_algebra:
      if (!flavor.boolean_algebra)
        fail(Errc::kind_mismatch,
             path.string() +
                 ": declared boolean but the boolean flag was not verified");
      break;
    default:
      break;
  }
  return out;
}

DocumentType detect_document_type(const fs::path& path) {
  auto lines = read_lines(path);
  if (lines.empty()) fail(Errc::syntax_error, path.string() + ": empty document");
  const auto& head = lines[0].tokens[0];
  if (head == "@kind") return DocumentType::structure;
  if (head != "@structure")
    parse_fail(path, lines[0].number,
               "expected @kind or @structure, got '" + head + "'");
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto& directive = lines[i].tokens[0];
    if (directive == "@atom") return DocumentType::observable;
    if (directive == "@cum") return DocumentType::family;
    if (directive == "@value") return DocumentType::state;
  }
  parse_fail(path, lines.back().number,
             "no @atom, @cum or @value lines after @structure");
}

namespace {

struct ReferencedDocument {
  StructurePtr structure;
  std::vector<Line> body;  // lines after @structure
};

ReferencedDocument load_referenced(const fs::path& path) {
  auto lines = read_lines(path);
  if (lines.empty()) fail(Errc::syntax_error, path.string() + ": empty document");
  if (lines[0].tokens[0] != "@structure" || lines[0].tokens.size() != 2)
    parse_fail(path, lines[0].number, "document must start with @structure <path>");
  fs::path ref = lines[0].tokens[1];
  if (ref.is_relative()) ref = path.parent_path() / ref;
  LoadedStructure loaded = load_structure_document(ref);
  if (loaded.kind == StructureKind::hilbert)
    fail(Errc::kind_mismatch,
         path.string() + ": hilbert documents cannot carry named elements");
  ReferencedDocument out;
  out.structure = loaded.structure;
  out.body.assign(lines.begin() + 1, lines.end());
  return out;
}

}  // namespace

Observable load_observable_document(const fs::path& path) {
  ReferencedDocument doc = load_referenced(path);
  std::vector<ObservableAtom> atoms;
  for (const Line& line : doc.body) {
    if (line.tokens[0] != "@atom" || line.tokens.size() != 3)
      parse_fail(path, line.number, "expected @atom <t> <element>");
    Rational t = parse_rational_at(path, line.number, line.tokens[1]);
    auto id = doc.structure->find(line.tokens[2]);
    if (!id)
      parse_fail(path, line.number, "unknown element '" + line.tokens[2] + "'");
    atoms.push_back(ObservableAtom{t, *id});
  }
  return Observable::make(doc.structure, std::move(atoms));
}

LoadedFamily load_family_document(const fs::path& path) {
  ReferencedDocument doc = load_referenced(path);
  LoadedFamily out;
  out.structure = doc.structure;
  for (const Line& line : doc.body) {
    if (line.tokens[0] != "@cum" || line.tokens.size() != 3)
      parse_fail(path, line.number, "expected @cum <t> <element>");
    Rational t = parse_rational_at(path, line.number, line.tokens[1]);
    auto id = doc.structure->find(line.tokens[2]);
    if (!id)
      parse_fail(path, line.number, "unknown element '" + line.tokens[2] + "'");
    out.jumps.push_back(SpectralJump{t, *id});
  }
  return out;
}

State load_state_document(const fs::path& path) {
  ReferencedDocument doc = load_referenced(path);
  const QuantumStructure& s = *doc.structure;
  std::vector<std::optional<Rational>> values(s.size());
  for (const Line& line : doc.body) {
    if (line.tokens[0] != "@value" || line.tokens.size() != 3)
      parse_fail(path, line.number, "expected @value <element> <p/q>");
    auto id = s.find(line.tokens[1]);
    if (!id)
      parse_fail(path, line.number, "unknown element '" + line.tokens[1] + "'");
    if (values[*id])
      parse_fail(path, line.number, "duplicate value for '" + line.tokens[1] + "'");
    values[*id] = parse_rational_at(path, line.number, line.tokens[2]);
  }
  std::vector<Rational> total;
  for (ElementId a = 0; a < s.size(); ++a) {
    if (!values[a])
      fail(Errc::precondition_failed,
           path.string() + ": no value for element '" + s.name(a) + "'");
    total.push_back(*values[a]);
  }
  return State::make(doc.structure, std::move(total));
}

std::string observable_document_text(const Observable& x,
                                     const std::string& structure_ref) {
  std::ostringstream out;
  out << "@structure " << structure_ref << "\n";
  for (const auto& atom : x.atoms())
    out << "@atom " << to_string(atom.point) << " "
        << x.structure()->name(atom.effect) << "\n";
  return out.str();
}

namespace {

std::string complex_entry(const std::complex<double>& z) {
  double re = z.real() == 0 ? 0 : z.real();  // normalize -0
  double im = z.imag() == 0 ? 0 : z.imag();
  if (im == 0) return format_real(re);
  std::string out = format_real(re);
  out += im < 0 ? "-" : "+";
  out += format_real(std::abs(im));
  out += "j";
  return out;
}

}  // namespace

std::string povm_document_text(const Povm& p) {
  std::ostringstream out;
  out << "@kind hilbert\n@dim " << p.dim() << "\n";
  for (const auto& atom : p.atoms()) {
    out << "@effect " << format_real(atom.point) << "\n";
    for (int r = 0; r < p.dim(); ++r) {
      for (int c = 0; c < p.dim(); ++c) {
        if (c) out << ", ";
        out << complex_entry(atom.effect.matrix()(r, c));
      }
      out << "\n";
    }
  }
  return out.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::precondition_failed, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace qobs
