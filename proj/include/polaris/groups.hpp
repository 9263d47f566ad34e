// Isotropy labels: closed subtori of T^n as integer lattices, and named
// compact groups whose structural facts are declared in a catalog.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "polaris/error.hpp"
#include "polaris/lattice.hpp"

namespace polaris {

class TorusSubgroup {
 public:
  TorusSubgroup() = default;
  TorusSubgroup(std::size_t ambient_rank, IntMatrix generators)
      : ambient_rank_(ambient_rank), generators_(std::move(generators)) {
    if (ambient_rank_ == 0) throw Error("torus subgroup: ambient rank must be positive");
    for (const auto& g : generators_)
      if (g.size() != ambient_rank_) throw Error("torus subgroup: generator " + to_string(g) + " has wrong length");
    if (generators_.size() == 1) generators_[0] = sign_normalized(generators_[0]);
    span_ = lattice_span(generators_, ambient_rank_);
  }

  static TorusSubgroup trivial(std::size_t n) { return TorusSubgroup(n, {}); }
  static TorusSubgroup circle(IntVector v) {
    const std::size_t n = v.size();
    return TorusSubgroup(n, {std::move(v)});
  }
  static TorusSubgroup full(std::size_t n) {
    IntMatrix id(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return TorusSubgroup(n, id);
  }

  std::size_t ambient_rank() const { return ambient_rank_; }
  const IntMatrix& generators() const { return generators_; }
  std::size_t dim() const { return span_.rank; }
  // Index of the raw generator span in its saturation; 1 means the
  // generators describe the connected subtorus exactly.
  Integer span_index() const { return span_.index; }
  const IntMatrix& canonical() const { return span_.saturation; }

  bool generators_primitive() const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [](const IntVector& v) { return !is_zero(v) && content(v) == 1; });
  }

  bool contains(const TorusSubgroup& other) const {
    if (other.ambient_rank_ != ambient_rank_) return false;
    for (const auto& v : other.canonical())
      if (!in_rational_span(canonical(), v, ambient_rank_)) return false;
    return true;
  }

  bool operator==(const TorusSubgroup& o) const {
    return ambient_rank_ == o.ambient_rank_ && canonical() == o.canonical();
  }

  std::string describe() const {
    if (dim() == 0) return "{e}<T^" + std::to_string(ambient_rank_);
    std::string s = dim() == 1 ? "S^1" : "T^" + std::to_string(dim());
    s += "<";
    for (std::size_t i = 0; i < generators_.size(); ++i) s += (i ? "," : "") + to_string(generators_[i]);
    return s + ">";
  }

 private:
  std::size_t ambient_rank_ = 1;
  IntMatrix generators_;
  LatticeSpan span_;
};

// r x n integer matrix, a homomorphism T^n -> T^r.
struct TorusHom {
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  IntMatrix matrix;

  TorusHom() = default;
  TorusHom(std::size_t n, std::size_t r, IntMatrix m) : source_rank(n), target_rank(r), matrix(std::move(m)) {
    if (matrix.size() != target_rank) throw Error("torus hom: expected " + std::to_string(r) + " rows");
    for (const auto& row : matrix)
      if (row.size() != source_rank) throw Error("torus hom: expected " + std::to_string(n) + " columns");
  }

  static TorusHom zero(std::size_t n, std::size_t r) { return TorusHom(n, r, IntMatrix(r, IntVector(n, 0))); }
  static TorusHom identity(std::size_t n) { return TorusHom(n, n, TorusSubgroup::full(n).generators()); }

  bool operator==(const TorusHom& o) const = default;
};

// Composition with the inclusion Z^m -> Z^n given by the subgroup's stored
// generators, so chains of restrictions compose exactly.
inline TorusHom restrict_hom(const TorusHom& phi, const TorusSubgroup& sub) {
  if (sub.ambient_rank() != phi.source_rank)
    throw Error("restrict_hom: subgroup lives in T^" + std::to_string(sub.ambient_rank()) + " but hom has source T^" +
                std::to_string(phi.source_rank));
  const std::size_t m = sub.generators().size();
  IntMatrix inclusion = transpose(sub.generators(), sub.ambient_rank());  // n x m
  return TorusHom(m, phi.target_rank, multiply(phi.matrix, inclusion, phi.source_rank, m));
}

// Coordinates of sub's generators in super's generators: the m x m' matrix C
// with sub.generators = C * super.generators. Throws when sub is not in the
// integer span of super.
inline IntMatrix express_in(const TorusSubgroup& sub, const TorusSubgroup& super) {
  IntMatrix out;
  for (const auto& g : sub.generators()) {
    IntVector c;
    if (!integer_coordinates(super.generators(), g, c))
      throw Error("express_in: " + to_string(g) + " is not in the span of " + super.describe());
    out.push_back(c);
  }
  return out;
}

struct NamedGroup {
  std::string name;
  bool operator==(const NamedGroup&) const = default;
};

using GroupRef = std::variant<TorusSubgroup, NamedGroup>;

inline bool is_torus(const GroupRef& g) { return std::holds_alternative<TorusSubgroup>(g); }

inline std::string describe(const GroupRef& g) {
  if (auto t = std::get_if<TorusSubgroup>(&g)) return t->describe();
  return std::get<NamedGroup>(g).name;
}

struct SubgroupDecl {
  std::string name;
  bool quotient_is_sphere = false;
  int sphere_dim = -1;
};

struct Coh1Decl {
  std::string first, second;
  int weyl_order = 0;
};

struct GenerationDecl {
  std::vector<std::string> generators;
  std::string generated;
};

struct CatalogEntry {
  std::string name;
  int dim = 0;
  std::vector<SubgroupDecl> subgroups;
  std::vector<Coh1Decl> coh1;
  std::vector<GenerationDecl> generation;
};

class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!index_.emplace(entries_[i].name, i).second)
        throw Error("catalog: duplicate entry '" + entries_[i].name + "'");
    }
  }

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  bool has(const std::string& name) const { return index_.count(name) != 0; }
  const CatalogEntry& at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("unresolved group name '" + name + "'");
    return entries_[it->second];
  }

  const SubgroupDecl* subgroup(const std::string& group, const std::string& sub) const {
    for (const auto& d : at(group).subgroups)
      if (d.name == sub) return &d;
    return nullptr;
  }

  const Coh1Decl* coh1(const std::string& group, const std::string& a, const std::string& b) const {
    for (const auto& d : at(group).coh1)
      if ((d.first == a && d.second == b) || (d.first == b && d.second == a)) return &d;
    return nullptr;
  }

  bool generated_by(const std::string& group, const std::set<std::string>& gens) const {
    for (const auto& d : at(group).generation) {
      std::set<std::string> s(d.generators.begin(), d.generators.end());
      if (s == gens && d.generated == group) return true;
    }
    return false;
  }

 private:
  std::vector<CatalogEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

struct CatalogReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

inline bool allowed_weyl_order(int m) { return m == 2 || m == 3 || m == 4 || m == 6; }

inline CatalogReport validate_catalog(const Catalog& cat) {
  CatalogReport rep;
  auto where = [](const CatalogEntry& e, const std::string& what) { return "entry '" + e.name + "' " + what; };
  for (const auto& e : cat.entries()) {
    if (e.dim < 0) rep.violations.push_back(where(e, "dim: negative dimension"));
    for (std::size_t i = 0; i < e.subgroups.size(); ++i) {
      const auto& d = e.subgroups[i];
      const std::string loc = "subgroups[" + std::to_string(i) + "]";
      if (!cat.has(d.name)) {
        rep.violations.push_back(where(e, loc + ": unresolved name '" + d.name + "'"));
        continue;
      }
      if (d.sphere_dim < -1) rep.violations.push_back(where(e, loc + ": sphere_dim below -1"));
      const int diff = e.dim - cat.at(d.name).dim;
      if (diff < 0) rep.violations.push_back(where(e, loc + ": subgroup '" + d.name + "' has larger dimension"));
      if (d.quotient_is_sphere && diff != d.sphere_dim)
        rep.violations.push_back(where(e, loc + ": dim(" + e.name + ") - dim(" + d.name + ") = " +
                                              std::to_string(diff) + " but sphere_dim = " +
                                              std::to_string(d.sphere_dim)));
    }
    for (std::size_t i = 0; i < e.coh1.size(); ++i) {
      const auto& d = e.coh1[i];
      const std::string loc = "coh1[" + std::to_string(i) + "]";
      for (const auto& n : {d.first, d.second})
        if (!cat.has(n)) rep.violations.push_back(where(e, loc + ": unresolved name '" + n + "'"));
      if (!allowed_weyl_order(d.weyl_order))
        rep.violations.push_back(where(e, loc + ": order " + std::to_string(d.weyl_order) + " not in {2,3,4,6}"));
    }
    for (std::size_t i = 0; i < e.generation.size(); ++i) {
      const auto& d = e.generation[i];
      const std::string loc = "generation[" + std::to_string(i) + "]";
      for (const auto& n : d.generators)
        if (!cat.has(n)) rep.violations.push_back(where(e, loc + ": unresolved name '" + n + "'"));
      if (!cat.has(d.generated)) rep.violations.push_back(where(e, loc + ": unresolved name '" + d.generated + "'"));
    }
  }
  return rep;
}

}  // namespace polaris
