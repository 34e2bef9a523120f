#ifndef CASTLAB_TYPES_HPP
#define CASTLAB_TYPES_HPP

// Types of the cast calculus: the unknown type `*`, base types, and
// function types, plus the ground types that drive injection and
// projection at runtime.

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace castlab {

enum class Base { Nat, Bool };

inline std::string to_string(Base b) { return b == Base::Nat ? "Nat" : "Bool"; }

class Type {
 public:
  enum class Kind { Unknown, Base, Arrow };

  static Type unknown() { return Type(std::make_shared<const Node>(Node{Kind::Unknown, Base::Nat, nullptr, nullptr})); }
  static Type base(Base b) { return Type(std::make_shared<const Node>(Node{Kind::Base, b, nullptr, nullptr})); }
  static Type nat() { return base(Base::Nat); }
  static Type boolean() { return base(Base::Bool); }
  static Type arrow(Type dom, Type cod) {
    return Type(std::make_shared<const Node>(Node{Kind::Arrow, Base::Nat, dom.n_, cod.n_}));
  }

  Kind kind() const { return n_->kind; }
  bool is_unknown() const { return n_->kind == Kind::Unknown; }
  bool is_base() const { return n_->kind == Kind::Base; }
  bool is_arrow() const { return n_->kind == Kind::Arrow; }

  Base base_kind() const {
    assert(is_base());
    return n_->base;
  }
  Type dom() const {
    assert(is_arrow());
    return Type(n_->dom);
  }
  Type cod() const {
    assert(is_arrow());
    return Type(n_->cod);
  }

  // Leaves have depth 1.
  std::size_t depth() const {
    if (!is_arrow()) return 1;
    std::size_t d = dom().depth(), c = cod().depth();
    return 1 + (d > c ? d : c);
  }

  friend bool operator==(const Type& a, const Type& b) {
    if (a.n_ == b.n_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Unknown: return true;
      case Kind::Base: return a.n_->base == b.n_->base;
      case Kind::Arrow: return a.dom() == b.dom() && a.cod() == b.cod();
    }
    return false;
  }
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    Base base;
    std::shared_ptr<const Node> dom, cod;
  };
  explicit Type(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

inline std::string to_string(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Unknown: return "*";
    case Type::Kind::Base: return to_string(t.base_kind());
    case Type::Kind::Arrow: return "(-> " + to_string(t.dom()) + " " + to_string(t.cod()) + ")";
  }
  return "?";
}

// Ground types: base grounds and the function ground *->*.
class Ground {
 public:
  static Ground base(Base b) { return Ground(true, b); }
  static Ground nat() { return base(Base::Nat); }
  static Ground boolean() { return base(Base::Bool); }
  static Ground fun() { return Ground(false, Base::Nat); }

  bool is_base() const { return is_base_; }
  bool is_fun() const { return !is_base_; }
  Base base_kind() const {
    assert(is_base_);
    return b_;
  }

  friend bool operator==(const Ground& a, const Ground& b) {
    if (a.is_base_ != b.is_base_) return false;
    return a.is_base_ ? a.b_ == b.b_ : true;
  }
  friend bool operator!=(const Ground& a, const Ground& b) { return !(a == b); }

 private:
  Ground(bool is_base, Base b) : is_base_(is_base), b_(b) {}
  bool is_base_;
  Base b_;
};

inline std::string to_string(const Ground& g) {
  return g.is_fun() ? "Fun" : to_string(g.base_kind());
}

// The type a ground stands for: base grounds map to their base type,
// the function ground to *->*.
inline Type ground_to_type(const Ground& g) {
  if (g.is_base()) return Type::base(g.base_kind());
  return Type::arrow(Type::unknown(), Type::unknown());
}

// Partial inverse of ground_to_type. Base types and arrows have a
// ground; * does not. Note every arrow answers Fun, so this is only a
// left inverse on ground images.
inline std::optional<Ground> ground_of(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Unknown: return std::nullopt;
    case Type::Kind::Base: return Ground::base(t.base_kind());
    case Type::Kind::Arrow: return Ground::fun();
  }
  return std::nullopt;
}

// True iff t is the image of its ground under ground_to_type, i.e. a
// base type or exactly *->*.
inline bool is_ground_image(const Type& t) {
  auto g = ground_of(t);
  return g.has_value() && ground_to_type(*g) == t;
}

// Consistency: * is consistent with everything, base types with
// themselves, arrows componentwise. Reflexive and symmetric but not
// transitive (Nat ~ * ~ Bool while Nat and Bool are inconsistent).
inline bool consistent(const Type& a, const Type& b) {
  if (a.is_unknown() || b.is_unknown()) return true;
  if (a.is_base() && b.is_base()) return a.base_kind() == b.base_kind();
  if (a.is_arrow() && b.is_arrow())
    return consistent(a.dom(), b.dom()) && consistent(a.cod(), b.cod());
  return false;
}

// Literals. Numbers are 64-bit; the calculus has no arithmetic, so the
// bound only limits source programs.
class Lit {
 public:
  static Lit num(std::int64_t v) { return Lit(true, v, false); }
  static Lit boolean(bool b) { return Lit(false, 0, b); }

  bool is_num() const { return is_num_; }
  bool is_bool() const { return !is_num_; }
  std::int64_t num_value() const {
    assert(is_num_);
    return num_;
  }
  bool bool_value() const {
    assert(!is_num_);
    return b_;
  }

  Base type_of() const { return is_num_ ? Base::Nat : Base::Bool; }

  friend bool operator==(const Lit& a, const Lit& b) {
    if (a.is_num_ != b.is_num_) return false;
    return a.is_num_ ? a.num_ == b.num_ : a.b_ == b.b_;
  }
  friend bool operator!=(const Lit& a, const Lit& b) { return !(a == b); }

 private:
  Lit(bool is_num, std::int64_t num, bool b) : is_num_(is_num), num_(num), b_(b) {}
  bool is_num_;
  std::int64_t num_;
  bool b_;
};

inline std::string to_string(const Lit& l) {
  if (l.is_num()) return "(nat " + std::to_string(l.num_value()) + ")";
  return l.bool_value() ? "true" : "false";
}

}  // namespace castlab

#endif
