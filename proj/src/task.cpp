#include "pc/task.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>
#include <sstream>

#include "pc/errors.hpp"
#include "pc/gma.hpp"
#include "pc/nilpotent.hpp"
#include "pc/pseudochar.hpp"
#include "pc/refine.hpp"

namespace pc::task {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- validation

class Diagnostics {
 public:
  void add(const std::string& path, const std::string& msg) { out_.push_back((path.empty() ? "/" : path) + ": " + msg); }
  std::vector<std::string> take() { return std::move(out_); }

 private:
  std::vector<std::string> out_;
};

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

bool scalar_like(const json& j) { return j.is_string() || j.is_number_integer(); }

const json* field(const json& obj, const std::string& key, const std::string& path, Diagnostics& D, bool required = true) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) D.add(at(path, key), "missing");
    return nullptr;
  }
  return &*it;
}

bool check_int(const json* j, const std::string& path, Diagnostics& D, long lo = LONG_MIN) {
  if (!j) return false;
  if (!j->is_number_integer()) {
    D.add(path, "expected an integer");
    return false;
  }
  if (j->get<long>() < lo) {
    D.add(path, "must be at least " + std::to_string(lo));
    return false;
  }
  return true;
}

bool check_string_list(const json* j, const std::string& path, Diagnostics& D) {
  if (!j) return false;
  if (!j->is_array()) {
    D.add(path, "expected an array");
    return false;
  }
  bool ok = true;
  for (std::size_t i = 0; i < j->size(); ++i)
    if (!scalar_like((*j)[i])) {
      D.add(at(path, i), "expected a string");
      ok = false;
    }
  return ok;
}

// Rectangular array of scalar entries; square (of size n when n > 0) if asked.
bool check_matrix(const json* j, const std::string& path, Diagnostics& D, bool square, std::size_t n = 0) {
  if (!j) return false;
  if (!j->is_array() || j->empty()) {
    D.add(path, "expected a nonempty array of rows");
    return false;
  }
  std::size_t cols = 0;
  for (std::size_t r = 0; r < j->size(); ++r) {
    const auto& row = (*j)[r];
    if (!row.is_array() || row.empty()) {
      D.add(at(path, r), "expected a nonempty row");
      return false;
    }
    if (r == 0) cols = row.size();
    if (row.size() != cols) {
      D.add(at(path, r), "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
      return false;
    }
    for (std::size_t c = 0; c < row.size(); ++c)
      if (!scalar_like(row[c])) {
        D.add(at(at(path, r), c), "expected a string");
        return false;
      }
  }
  if (square && cols != j->size()) {
    D.add(path, "matrix is " + std::to_string(j->size()) + "x" + std::to_string(cols) + ", expected square");
    return false;
  }
  if (n > 0 && j->size() != n) {
    D.add(path, "matrix has size " + std::to_string(j->size()) + ", expected " + std::to_string(n));
    return false;
  }
  return true;
}

void check_field(const json* j, const std::string& path, Diagnostics& D) {
  if (!j) return;
  if (j->is_string() && j->get<std::string>() == "Q") return;
  if (j->is_number_integer()) {
    long p = j->get<long>();
    if (p > 2 && is_prime(static_cast<std::uint64_t>(p)) && p < (1L << 31)) return;
  }
  D.add(path, "expected \"Q\" or an odd prime");
}

void check_algebra(const json* j, const std::string& path, Diagnostics& D) {
  if (!j) return;
  if (!j->is_object()) {
    D.add(path, "expected an object");
    return;
  }
  check_field(field(*j, "field", path, D, false), at(path, "field"), D);
  check_string_list(field(*j, "vars", path, D, false), at(path, "vars"), D);
  check_string_list(field(*j, "relations", path, D, false), at(path, "relations"), D);
  check_int(field(*j, "truncation", path, D, false), at(path, "truncation"), D, 0);
}

void check_perm(const json& j, const std::string& path, Diagnostics& D) {
  if (!j.is_array() || j.empty()) {
    D.add(path, "expected a permutation as a list of images");
    return;
  }
  std::set<long> seen;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long>() < 1 || x.get<long>() > static_cast<long>(j.size())) {
      D.add(path, "images must be integers in 1.." + std::to_string(j.size()));
      return;
    }
    seen.insert(x.get<long>());
  }
  if (seen.size() != j.size()) D.add(path, "not a permutation");
}

void validate_pseudochar(const json& t, Diagnostics& D) {
  check_algebra(field(t, "algebra", "", D, false), "/algebra", D);
  const json* d = field(t, "d", "", D);
  bool have_d = check_int(d, "/d", D, 1);
  const json* R = field(t, "R", "", D);
  bool is_group = false;
  std::size_t ngens = 0;
  if (R) {
    if (!R->is_object()) {
      D.add("/R", "expected an object");
    } else if (R->contains("matrix")) {
      check_int(&(*R)["matrix"], "/R/matrix", D, 1);
    } else if (R->contains("group")) {
      is_group = true;
      const json* g = field((*R)["group"], "generators", "/R/group", D);
      if (g && (!g->is_array() || g->empty())) {
        D.add("/R/group/generators", "expected a nonempty array");
      } else if (g) {
        ngens = g->size();
        for (std::size_t i = 0; i < g->size(); ++i) {
          check_perm((*g)[i], at("/R/group/generators", i), D);
          if ((*g)[i].size() != (*g)[0].size()) D.add(at("/R/group/generators", i), "generators act on different sets");
        }
      }
    } else {
      D.add("/R", "expected \"matrix\" or \"group\"");
    }
  }
  const json* T = field(t, "trace", "", D);
  if (T) {
    if (T->is_string()) {
      auto s = T->get<std::string>();
      if (s != "matrix-trace" && s != "regular") D.add("/trace", "unknown trace \"" + s + "\"");
      if (s == "matrix-trace" && is_group) D.add("/trace", "matrix-trace needs a matrix algebra");
      if (s == "regular" && !is_group) D.add("/trace", "regular trace needs a group algebra");
    } else if (T->is_object() && T->contains("representation")) {
      const auto& rep = (*T)["representation"];
      if (!is_group) D.add("/trace/representation", "representations need a group algebra");
      if (!rep.is_array()) {
        D.add("/trace/representation", "expected one matrix per generator");
      } else {
        if (is_group && rep.size() != ngens) D.add("/trace/representation", "expected one matrix per generator");
        std::size_t n = have_d ? d->get<std::size_t>() : 0;
        for (std::size_t i = 0; i < rep.size(); ++i) check_matrix(&rep[i], at("/trace/representation", i), D, true, n);
      }
    } else if (T->is_object() && T->contains("values")) {
      check_string_list(&(*T)["values"], "/trace/values", D);
    } else {
      D.add("/trace", "expected \"matrix-trace\", \"regular\", {\"representation\"} or {\"values\"}");
    }
  }
  if (const json* v = field(t, "verify", "", D, false)) {
    if (const json* m = field(*v, "mode", "/verify", D, false)) {
      if (!m->is_string() || (*m != "auto" && *m != "exhaustive" && *m != "randomized"))
        D.add("/verify/mode", "expected auto, exhaustive or randomized");
    }
    check_int(field(*v, "trials", "/verify", D, false), "/verify/trials", D, 1);
  }
}

void check_block_index(const json& obj, const std::string& key, const std::string& path, std::size_t r, Diagnostics& D) {
  const json* j = field(obj, key, path, D);
  if (check_int(j, at(path, key), D, 1) && j->get<std::size_t>() > r) D.add(at(path, key), "block index out of range");
}

void validate_gma(const json& t, Diagnostics& D) {
  const json* A = field(t, "algebra", "", D);
  check_algebra(A, "/algebra", D);
  const json* type = field(t, "type", "", D);
  std::size_t r = 0;
  if (type) {
    if (!type->is_array() || type->empty()) {
      D.add("/type", "expected a nonempty array of block sizes");
    } else {
      r = type->size();
      for (std::size_t i = 0; i < r; ++i) check_int(&(*type)[i], at("/type", i), D, 1);
    }
  }
  bool standard = t.contains("standard"), modules = t.contains("modules");
  if (standard == modules) D.add("/", "expected exactly one of \"standard\" and \"modules\"");
  if (standard) {
    const auto& s = t["standard"];
    if (!s.is_array()) D.add("/standard", "expected an array");
    for (std::size_t n = 0; s.is_array() && n < s.size(); ++n) {
      auto path = at("/standard", n);
      check_block_index(s[n], "i", path, r, D);
      check_block_index(s[n], "j", path, r, D);
      check_string_list(field(s[n], "generators", path, D), at(path, "generators"), D);
    }
  }
  if (modules) {
    const auto& m = t["modules"];
    if (!m.is_array()) D.add("/modules", "expected an array");
    for (std::size_t n = 0; m.is_array() && n < m.size(); ++n) {
      auto path = at("/modules", n);
      check_block_index(m[n], "i", path, r, D);
      check_block_index(m[n], "j", path, r, D);
      const json* g = field(m[n], "generators", path, D);
      if (check_int(g, at(path, "generators"), D, 1)) {
        if (const json* rel = field(m[n], "relations", path, D, false)) {
          if (!rel->is_array()) D.add(at(path, "relations"), "expected an array");
          for (std::size_t k = 0; rel->is_array() && k < rel->size(); ++k) {
            check_string_list(&(*rel)[k], at(at(path, "relations"), k), D);
            if ((*rel)[k].is_array() && (*rel)[k].size() != g->get<std::size_t>())
              D.add(at(at(path, "relations"), k), "relation length differs from the number of generators");
          }
        }
      }
    }
    const json* phi = field(t, "phi", "", D, false);
    if (phi && !phi->is_array()) D.add("/phi", "expected an array");
    for (std::size_t n = 0; phi && phi->is_array() && n < phi->size(); ++n) {
      auto path = at("/phi", n);
      for (const char* key : {"i", "j", "k"}) check_block_index((*phi)[n], key, path, r, D);
      const json* table = field((*phi)[n], "table", path, D);
      if (table && !table->is_array()) D.add(at(path, "table"), "expected an array");
      for (std::size_t a = 0; table && table->is_array() && a < table->size(); ++a) {
        if (!(*table)[a].is_array()) {
          D.add(at(at(path, "table"), a), "expected an array");
          continue;
        }
        for (std::size_t b = 0; b < (*table)[a].size(); ++b)
          check_string_list(&(*table)[a][b], at(at(at(path, "table"), a), b), D);
      }
    }
  }
  if (const json* J = field(t, "locus", "", D, false)) check_string_list(J, "/locus", D);
  if (const json* inv = field(t, "involution", "", D, false)) {
    if (!inv->is_string() || (*inv != "block-swap" && *inv != "block-swap-neg"))
      D.add("/involution", "expected \"block-swap\" or \"block-swap-neg\"");
    else if (r != 2 || (type && ((*type)[0] != 1 || (*type)[1] != 1)))
      D.add("/involution", "block swaps need type [1, 1]");
  }
}

void validate_nilpotent(const json& t, Diagnostics& D) {
  const json* s = field(t, "setting", "", D);
  if (!s) return;
  if (!s->is_string()) {
    D.add("/setting", "expected a string");
    return;
  }
  std::string setting = s->get<std::string>();
  if (setting == "field") {
    check_field(field(t, "field", "", D, false), "/field", D);
    const json* m = field(t, "matrix", "", D);
    if (check_matrix(m, "/matrix", D, true))
      if (const json* c = field(t, "compare", "", D, false)) check_matrix(c, "/compare", D, true, m->size());
  } else if (setting == "local") {
    check_algebra(field(t, "algebra", "", D), "/algebra", D);
    check_matrix(field(t, "matrix", "", D), "/matrix", D, true);
  } else if (setting == "dvr") {
    check_field(field(t, "field", "", D, false), "/field", D);
    check_matrix(field(t, "matrix", "", D), "/matrix", D, true);
  } else if (setting == "wd") {
    check_field(field(t, "field", "", D, false), "/field", D);
    for (const char* side : {"a", "b"}) {
      const json* w = field(t, side, "", D);
      if (!w) continue;
      if (!w->is_object()) {
        D.add(at("", side), "expected an object of labelled matrices");
        continue;
      }
      for (const auto& [label, m] : w->items()) check_matrix(&m, at(at("", side), label), D, true);
    }
  } else {
    D.add("/setting", "expected field, local, dvr or wd");
  }
}

void check_index_sets(const json* j, const std::string& path, Diagnostics& D) {
  if (!j) return;
  if (!j->is_array()) {
    D.add(path, "expected an array");
    return;
  }
  for (std::size_t i = 0; i < j->size(); ++i) {
    if (!(*j)[i].is_array()) {
      D.add(at(path, i), "expected an array of integers");
      continue;
    }
    for (std::size_t k = 0; k < (*j)[i].size(); ++k) check_int(&(*j)[i][k], at(at(path, i), k), D, 1);
  }
}

void validate_refine(const json& t, Diagnostics& D) {
  bool any = false;
  if (const json* m = field(t, "module", "", D, false)) {
    any = true;
    const json* p = field(*m, "p", "/module", D);
    if (check_int(p, "/module/p", D, 2) && !is_prime(p->get<std::uint64_t>())) D.add("/module/p", "not a prime");
    const json* phi = field(*m, "phi", "/module", D);
    check_string_list(phi, "/module/phi", D);
    const json* w = field(*m, "weights", "/module", D);
    if (w && !w->is_array()) D.add("/module/weights", "expected an array");
    for (std::size_t i = 0; w && w->is_array() && i < w->size(); ++i) check_int(&(*w)[i], at("/module/weights", i), D);
    std::size_t d = phi && phi->is_array() ? phi->size() : 0;
    if (w && w->is_array() && w->size() != d) D.add("/module/weights", "expected one weight per eigenvalue");
    if (d == 0 && phi) D.add("/module/phi", "expected at least one eigenvalue");
    if (d > 12) D.add("/module/phi", "dimension above 12 is not supported");
    if (d > 0) check_matrix(field(*m, "flag", "/module", D), "/module/flag", D, true, d);
  }
  if (const json* s = field(t, "spectrum", "", D, false)) {
    any = true;
    const json* X = field(*s, "X", "/spectrum", D);
    if (X && !X->is_array()) D.add("/spectrum/X", "expected an array");
    for (std::size_t i = 0; X && X->is_array() && i < X->size(); ++i) {
      auto path = at("/spectrum/X", i);
      const json* tag = field((*X)[i], "tag", path, D);
      if (tag && !tag->is_string()) D.add(at(path, "tag"), "expected a string");
      const json* e = field((*X)[i], "exp", path, D);
      if (e && !scalar_like(*e)) D.add(at(path, "exp"), "expected a rational string");
    }
    check_int(field(*s, "max_listed", "/spectrum", D, false), "/spectrum/max_listed", D, 0);
  }
  if (const json* b = field(t, "blocks", "", D, false)) {
    any = true;
    if (!b->is_array()) D.add("/blocks", "expected an array");
    for (std::size_t i = 0; b->is_array() && i < b->size(); ++i) {
      auto path = at("/blocks", i);
      for (const char* key : {"R", "W"}) {
        const json* s = field((*b)[i], key, path, D);
        if (s) {
          json wrap = json::array({*s});
          Diagnostics inner;
          check_index_sets(&wrap, "", inner);
          if (!inner.take().empty()) D.add(at(path, key), "expected an array of positive integers");
        }
      }
    }
  }
  if (const json* o = field(t, "orthogonal", "", D, false)) {
    any = true;
    check_index_sets(field(*o, "W", "/orthogonal", D), "/orthogonal/W", D);
    if (const json* pin = field(*o, "pinEnds", "/orthogonal", D, false); pin && !pin->is_boolean())
      D.add("/orthogonal/pinEnds", "expected a boolean");
  }
  if (!any) D.add("/", "expected at least one of module, spectrum, blocks, orthogonal");
}

// ---------------------------------------------------------------- building

std::string text(const json& j) { return j.is_string() ? j.get<std::string>() : std::to_string(j.get<long>()); }

std::vector<std::string> strings(const json& j) {
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(text(x));
  return out;
}

std::vector<std::vector<std::string>> string_matrix(const json& j) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : j) out.push_back(strings(row));
  return out;
}

BaseField base_field(const json* j) {
  if (!j || j->is_string()) return BaseField::rationals();
  return BaseField::prime(j->get<std::uint32_t>());
}

AlgPtr build_algebra(const json* j) {
  if (!j) return ArtinianLocalAlgebra::field(BaseField::rationals());
  BaseField k = base_field(j->contains("field") ? &(*j)["field"] : nullptr);
  auto vars = j->contains("vars") ? strings((*j)["vars"]) : std::vector<std::string>{};
  if (vars.empty()) return ArtinianLocalAlgebra::field(k);
  auto rels = j->contains("relations") ? strings((*j)["relations"]) : std::vector<std::string>{};
  int trunc = j->value("truncation", 1);
  return ArtinianLocalAlgebra::quotient(k, vars, rels, trunc);
}

QMatrix scalar_matrix(const json& j, std::uint32_t p) {
  QMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) m(r, c) = Scalar::parse(text(j[r][c]), p);
  return m;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto x : v) out.push_back(x + 1);
  return out;
}

json certificate_json(const Certificate& c) {
  return {{"ok", c.ok}, {"mode", c.mode}, {"tuples", c.tuples}, {"seed", c.seed}, {"failure", c.failure}, {"witness", c.witness}};
}

json format_vecs(const ArtinianLocalAlgebra& A, const std::vector<Vec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(A.format(v));
  return out;
}

json format_amat(const ArtinianLocalAlgebra& A, const AMat& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(format_vecs(A, row));
  return out;
}

// ---------------------------------------------------------------- kinds

json run_pseudochar(const json& t, const RunOptions& opt) {
  AlgPtr A = build_algebra(t.contains("algebra") ? &t["algebra"] : nullptr);
  const json& Rj = t["R"];
  RAlgPtr R;
  if (Rj.contains("matrix")) {
    R = FiniteAlgebra::matrix_algebra(A, Rj["matrix"].get<std::size_t>());
  } else {
    std::vector<Perm> gens;
    for (const auto& g : Rj["group"]["generators"]) {
      Perm p;
      for (const auto& x : g) p.push_back(x.get<int>() - 1);
      gens.push_back(p);
    }
    R = FiniteAlgebra::group_algebra(A, gens);
  }
  const long d = t["d"].get<long>();
  const json& Tj = t["trace"];
  Pseudocharacter T;
  if (Tj.is_string() && Tj == "matrix-trace") {
    T = Pseudocharacter::matrix_trace(R);
  } else if (Tj.is_string()) {
    std::vector<Vec> vals(R->free_rank(), A->zero());
    vals[0] = A->scalar(Scalar(static_cast<long>(R->free_rank())));
    T = Pseudocharacter::from_free_values(R, vals, static_cast<long>(R->free_rank()));
  } else if (Tj.contains("representation")) {
    std::vector<AMat> images;
    for (const auto& m : Tj["representation"]) images.push_back(amat_parse(*A, string_matrix(m)));
    T = Pseudocharacter::group_rep_trace(R, images);
  } else {
    auto vals = strings(Tj["values"]);
    if (vals.size() != R->dim()) throw SchemaError("/trace/values: expected " + std::to_string(R->dim()) + " values");
    std::vector<Vec> vs;
    for (const auto& s : vals) vs.push_back(A->parse(s));
    T = Pseudocharacter::from_basis_values(R, vs, d);
  }
  T.d = d;

  VerifyOptions vo;
  vo.seed = opt.seed;
  vo.tuple_budget = opt.tuple_budget;
  if (t.contains("verify")) {
    const auto& v = t["verify"];
    std::string mode = v.value("mode", "auto");
    vo.mode = mode == "exhaustive" ? VerifyMode::Exhaustive : mode == "randomized" ? VerifyMode::Randomized : VerifyMode::Auto;
    vo.trials = v.value("trials", vo.trials);
  }
  json rep;
  auto cert = is_pseudocharacter(T, vo);
  rep["verdict"] = cert.ok;
  rep["dimension"] = d;
  rep["pseudocharacter"] = certificate_json(cert);
  rep["cayley_hamilton"] = cert.ok ? certificate_json(is_cayley_hamilton(T, vo)) : json(nullptr);
  rep["algebra_dim"] = R->dim();
  rep["coefficient_dim"] = A->dim();
  rep["T_of_one"] = A->format(T(R->one()));
  rep["kernel_dim"] = kernel(T).dim();
  json notes = json::array();
  if (!R->provenance().empty()) notes.push_back(R->provenance());
  rep["notes"] = notes;
  return rep;
}

json run_gma(const json& t, const RunOptions& opt) {
  AlgPtr A = build_algebra(&t["algebra"]);
  std::vector<std::size_t> type;
  for (const auto& x : t["type"]) type.push_back(x.get<std::size_t>());
  const std::size_t r = type.size();
  auto ij = [](const json& o) { return std::make_pair(o["i"].get<std::size_t>() - 1, o["j"].get<std::size_t>() - 1); };

  GMAData data = [&] {
    if (t.contains("standard")) {
      std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec>> ideals;
      for (const auto& s : t["standard"]) {
        std::vector<Vec> gens;
        for (const auto& g : strings(s["generators"])) gens.push_back(A->parse(g));
        ideals[ij(s)] = gens;
      }
      return GMAData::standard(A, type, ideals);
    }
    std::map<std::pair<std::size_t, std::size_t>, FiniteModule> mods;
    for (const auto& m : t["modules"]) {
      std::vector<std::vector<Vec>> rels;
      if (m.contains("relations"))
        for (const auto& rel : m["relations"]) {
          std::vector<Vec> row;
          for (const auto& s : strings(rel)) row.push_back(A->parse(s));
          rels.push_back(row);
        }
      mods.emplace(ij(m), FiniteModule::from_presentation(A, m["generators"].get<std::size_t>(), rels));
    }
    std::map<GMAData::Triple, GMAData::GeneratorTable> phi;
    if (t.contains("phi"))
      for (const auto& p : t["phi"]) {
        GMAData::Triple key{p["i"].get<std::size_t>() - 1, p["j"].get<std::size_t>() - 1, p["k"].get<std::size_t>() - 1};
        GMAData::GeneratorTable table;
        for (const auto& row : p["table"]) {
          std::vector<std::vector<Vec>> out_row;
          for (const auto& cell : row) {
            std::vector<Vec> coeffs;
            for (const auto& s : strings(cell)) coeffs.push_back(A->parse(s));
            out_row.push_back(coeffs);
          }
          table.push_back(out_row);
        }
        phi[key] = table;
      }
    return GMAData::abstract(A, type, mods, phi);
  }();

  json rep;
  rep["construction_issues"] = data.construction_issues();
  auto val = validate_gma(data);
  rep["validation"] = {{"ok", val.ok}, {"violations", val.violations}};
  if (!val.ok || !data.construction_issues().empty()) {
    std::string witness = !data.construction_issues().empty() ? data.construction_issues().front() : val.violations.front();
    throw MathError("invalid GMA", witness);
  }
  rep["algebra_dim"] = A->dim();
  rep["degree"] = data.degree();
  rep["residually_multiplicity_free"] = is_residually_mf_gma(data);

  Ideal I = reducibility_ideal(data, total_partition(r));
  Ideal m = Ideal::maximal(A);
  rep["reducibility_ideal"] = {{"dim", I.dim()},
                               {"generators", format_vecs(*A, I.generators())},
                               {"equals_maximal_ideal", I == m},
                               {"min_generators", min_generators(FiniteModule::from_ideal(I))}};

  Ideal J = t.contains("locus") ? Ideal::parse(A, strings(t["locus"])) : m;
  rep["locus"] = {{"dim", J.dim()}, {"generators", format_vecs(*A, J.generators())}};
  json ext = json::array();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      json e = {{"i", i + 1}, {"j", j + 1}, {"a_prime_dim", a_prime(data, i, j).dim()}, {"module_dim", data.module_dim(i, j)}};
      try {
        e["ext_dim"] = ext_dimension(data, i, j, J);
      } catch (const MathError& err) {
        e["ext_dim"] = nullptr;
        e["note"] = err.what();
      }
      ext.push_back(e);
    }
  rep["ext"] = ext;

  if (t.contains("involution")) {
    GMAAlgebra G(data);
    Scalar s = t["involution"] == "block-swap-neg" ? Scalar(-1) : Scalar(1);
    auto ir = analyze_involution(G, involution_block_swap(G, s), J);
    json signs = json::array(), squares = json::array();
    for (const auto& x : ir.signs) signs.push_back(x ? json(*x) : json(nullptr));
    rep["involution"] = {{"s", s.str()},
                         {"sigma", one_based(ir.sigma)},
                         {"signs", signs},
                         {"composite_is_unit", ir.composite_is_unit},
                         {"isomorphisms", ir.isomorphisms},
                         {"multiplicative", ir.multiplicative},
                         {"preserves_prime", ir.preserves_prime},
                         {"squares_checked", ir.squares_checked},
                         {"square_commutes", ir.square_commutes},
                         {"notes", ir.notes}};
  }
  (void)opt;
  return rep;
}

json type_json(const JordanType& t) { return json(t); }

json run_nilpotent(const json& t) {
  const std::string setting = t["setting"];
  json rep;
  rep["setting"] = setting;
  if (setting == "field") {
    auto p = base_field(t.contains("field") ? &t["field"] : nullptr).p;
    QMatrix n = scalar_matrix(t["matrix"], p);
    auto tn = jordan_type(n);
    rep["jordan_type"] = type_json(tn);
    if (t.contains("compare")) {
      QMatrix c = scalar_matrix(t["compare"], p);
      auto tc = jordan_type(c);
      bool g = gerstenhaber_leq(n, c), dom = dominance_leq(tn, tc);
      rep["compare"] = {{"jordan_type", type_json(tc)}, {"gerstenhaber_leq", g}, {"dominance_leq", dom}, {"criteria_agree", g == dom}};
    }
  } else if (setting == "local") {
    AlgPtr A = build_algebra(&t["algebra"]);
    auto res = jordan_over_local(A, amat_parse(*A, string_matrix(t["matrix"])));
    rep["jordan_form_exists"] = res.present;
    rep["failing_power"] = res.failing_power ? json(*res.failing_power) : json(nullptr);
    if (res.present) {
      rep["jordan_type"] = type_json(res.type);
      rep["base_change"] = format_amat(*A, res.base_change);
    }
  } else if (setting == "dvr") {
    auto p = base_field(t.contains("field") ? &t["field"] : nullptr).p;
    const auto rows = string_matrix(t["matrix"]);
    Matrix<RatFunc> n(rows.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows.size(); ++c) n(r, c) = RatFunc::parse(rows[r][c], p);
    auto res = residual_generic_compare(n, p);
    rep["residual_type"] = type_json(res.residual);
    rep["generic_type"] = type_json(res.generic);
    rep["residual_leq_generic"] = res.residual_leq_generic;
    rep["equal"] = res.equal;
    if (res.base_change) {
      json bc = json::array();
      for (std::size_t r = 0; r < res.base_change->rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < res.base_change->cols; ++c) row.push_back((*res.base_change)(r, c).str());
        bc.push_back(row);
      }
      rep["base_change"] = bc;
    } else {
      rep["base_change"] = nullptr;
    }
  } else {
    auto p = base_field(t.contains("field") ? &t["field"] : nullptr).p;
    auto side = [&](const json& w) {
      InertialWD out;
      for (const auto& [label, m] : w.items()) out.emplace(label, scalar_matrix(m, p));
      return out;
    };
    InertialWD a = side(t["a"]), b = side(t["b"]);
    auto cmp = wd_compare(a, b);
    json types = json::object();
    for (const auto& [label, m] : a) types["a"][label] = type_json(jordan_type(m));
    for (const auto& [label, m] : b) types["b"][label] = type_json(jordan_type(m));
    rep["types"] = types;
    rep["a_leq_b"] = cmp.leq;
    rep["b_leq_a"] = cmp.geq;
    rep["equivalent"] = cmp.equivalent;
    rep["comparable"] = cmp.comparable();
  }
  return rep;
}

std::vector<std::vector<int>> int_sets(const json& j) {
  std::vector<std::vector<int>> out;
  for (const auto& s : j) out.push_back(s.get<std::vector<int>>());
  return out;
}

json run_refine(const json& t) {
  json rep;
  if (t.contains("module")) {
    const auto& m = t["module"];
    FilteredPhiModule D;
    D.p = m["p"].get<long>();
    for (const auto& s : strings(m["phi"])) D.phi.push_back(Scalar::parse(s));
    D.weights = m["weights"].get<std::vector<long>>();
    for (const auto& row : string_matrix(m["flag"])) {
      Vec v;
      for (const auto& s : row) v.push_back(Scalar::parse(s));
      D.flag.push_back(v);
    }
    D.require_valid();
    auto wa = check_weak_admissibility(D);
    json mod;
    mod["weakly_admissible"] = wa.ok;
    mod["totals_equal"] = wa.totals_equal;
    mod["violating_subset"] = wa.violating_subset ? json(one_based(*wa.violating_subset)) : json(nullptr);
    json valuations = json::array();
    for (const auto& x : D.phi) valuations.push_back(padic_valuation(x, D.p));
    mod["valuations"] = valuations;
    json refs = json::array();
    std::size_t nc = 0, nnc = 0, reg = 0;
    for (const auto& r : enumerate_refinements(D)) {
      json phi_order = json::array();
      for (auto i : r) phi_order.push_back(D.phi[i].str());
      bool a = is_non_critical(D, r), b = is_numerically_non_critical(D, r), c = is_regular(D, r);
      nc += a;
      nnc += b;
      reg += c;
      refs.push_back({{"ordering", one_based(r)},
                      {"phi", phi_order},
                      {"induced_weights", induced_weights(D, r)},
                      {"non_critical", a},
                      {"numerically_non_critical", b},
                      {"regular", c}});
    }
    mod["refinements"] = refs;
    mod["counts"] = {{"refinements", refs.size()}, {"non_critical", nc}, {"numerically_non_critical", nnc}, {"regular", reg}};
    rep["module"] = mod;
  }
  if (t.contains("spectrum")) {
    const auto& s = t["spectrum"];
    UnramifiedSpectrum S;
    S.q = s.contains("q") ? text(s["q"]) : "q";
    for (const auto& x : s["X"]) S.X.push_back({x["tag"].get<std::string>(), Scalar::parse(text(x["exp"]))});
    json sp;
    auto part = almost_tempered_partition(S);
    sp["almost_tempered"] = part.has_value();
    if (part) {
      json blocks = json::array();
      for (const auto& b : *part) blocks.push_back(one_based(b));
      sp["blocks"] = blocks;
      auto acc = accessible_refinements(S, s.value("max_listed", std::size_t{100000}));
      json ords = json::array();
      for (const auto& o : acc.orderings) {
        json labelled = json::array();
        for (auto i : o) labelled.push_back(S.X[i].tag + "*" + S.q + "^(" + S.X[i].exp.str() + ")");
        ords.push_back({{"indices", one_based(o)}, {"elements", labelled}});
      }
      sp["accessible"] = {{"count", acc.count}, {"listed", acc.orderings.size()}, {"orderings", ords}};
    }
    rep["spectrum"] = sp;
  }
  if (t.contains("blocks")) {
    BlockRefinementData data;
    for (const auto& b : t["blocks"]) data.push_back({b["R"].get<std::vector<int>>(), b["W"].get<std::vector<int>>()});
    auto sr = sigma_permutation(data);
    rep["blocks"] = {{"sigma", sr.sigma},
                     {"classification", sr.classification},
                     {"transitive", sr.transitive},
                     {"WP_neq_RP", check_WP_neq_RP(data)}};
  }
  if (t.contains("orthogonal")) {
    const auto& o = t["orthogonal"];
    OrthogonalOptions oo;
    oo.pin_ends = o.value("pinEnds", false);
    auto W = int_sets(o["W"]);
    auto R = orthogonal_partition(W, oo);
    BlockRefinementData data;
    for (std::size_t i = 0; i < W.size(); ++i) data.push_back({R[i], W[i]});
    rep["orthogonal"] = {{"R", R}, {"W", W}, {"pinEnds", oo.pin_ends}, {"WP_neq_RP", check_WP_neq_RP(data)}};
  }
  return rep;
}

void flatten(const json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::vector<std::string> validate(const json& t) {
  Diagnostics D;
  if (!t.is_object()) {
    D.add("", "task must be a JSON object");
    return D.take();
  }
  const json* v = field(t, "version", "", D);
  if (v && (!v->is_number_integer() || v->get<long>() != kVersion)) D.add("/version", "unsupported version");
  const json* kind = field(t, "kind", "", D);
  if (!kind) return D.take();
  if (!kind->is_string()) {
    D.add("/kind", "expected a string");
    return D.take();
  }
  const std::string k = kind->get<std::string>();
  if (k == "pseudochar-check")
    validate_pseudochar(t, D);
  else if (k == "gma-analyze")
    validate_gma(t, D);
  else if (k == "nilpotent")
    validate_nilpotent(t, D);
  else if (k == "refine")
    validate_refine(t, D);
  else
    D.add("/kind", "unknown kind \"" + k + "\"");
  return D.take();
}

json run(const json& t, const RunOptions& opt) {
  auto diags = validate(t);
  if (!diags.empty()) throw SchemaError(diags.front());
  const std::string kind = t["kind"];
  json rep;
  if (kind == "pseudochar-check")
    rep = run_pseudochar(t, opt);
  else if (kind == "gma-analyze")
    rep = run_gma(t, opt);
  else if (kind == "nilpotent")
    rep = run_nilpotent(t);
  else
    rep = run_refine(t);
  rep["kind"] = kind;
  rep["report_version"] = kVersion;
  rep["seed"] = opt.seed;
  rep["task"] = t;
  return rep;
}

json error_report(const std::string& kind, const std::string& message, const std::string& witness) {
  return {{"error", {{"kind", kind}, {"message", message}, {"witness", witness}}}, {"report_version", kVersion}};
}

std::string to_text(const json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace pc::task
