#ifndef BIL_FORMULA_HPP
#define BIL_FORMULA_HPP

// Formulas of bi-intuitionistic propositional logic over the connectives
// {false, letter, &, |, ->, -<}, where "-<" is co-implication.
//
// Formula is an immutable value with shared structure: copying is cheap and
// subformulas may be shared between several parents.  Structural equality
// compares trees, not node identity.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace bil {

// True iff name matches [a-zA-Z][a-zA-Z0-9_+-]* and is not a keyword.
bool is_valid_letter(std::string_view name);

// Finite set of letters iterated in insertion order.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::string> letters);
  explicit Signature(std::span<const std::string> letters);

  // Appends letter unless already present; throws InvalidArgument on a
  // malformed name.
  void insert(const std::string& letter);
  bool contains(std::string_view letter) const;
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t size() const noexcept { return letters_.size(); }

  const std::vector<std::string>& letters() const noexcept { return letters_; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  bool is_subset_of(const Signature& other) const;
  // Set equality, ignoring insertion order.
  bool same_letters(const Signature& other) const;

  friend bool operator==(const Signature& a, const Signature& b) { return a.letters_ == b.letters_; }

 private:
  std::vector<std::string> letters_;
  std::unordered_set<std::string> index_;
};

enum class Connective : std::uint8_t { bottom, atom, conj, disj, impl, coimpl };

class Formula {
 public:
  // Default-constructed formula is falsum.
  Formula();

  static Formula bottom();
  static Formula atom(std::string letter);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula impl(Formula lhs, Formula rhs);
  static Formula coimpl(Formula lhs, Formula rhs);

  // Derived connectives.
  static Formula top();            // false -> false
  static Formula neg(Formula f);   // f -> false
  // Conjunction of all members; the empty conjunction is top().
  static Formula big_conj(std::span<const Formula> fs);
  // Disjunction of all members; the empty disjunction is bottom().
  static Formula big_disj(std::span<const Formula> fs);

  Connective kind() const noexcept;
  const std::string& letter() const;  // only for atoms
  const Formula& lhs() const;         // only for binary connectives
  const Formula& rhs() const;
  bool is_binary() const noexcept;

  // Nesting depth of -> and -<; & and | do not add rank.
  int rank() const noexcept;
  // Number of nodes in the tree (shared subtrees counted per occurrence).
  std::size_t size() const noexcept;

  // Stable identity of the underlying node; used for memo tables.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Connective c, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

// Letters occurring in f, in order of first occurrence (left to right).
Signature letters(const Formula& f);

// Parses the surface syntax:
//   formula := coimpl ("->" formula)?
//   coimpl  := disj ("-<" disj)*
//   disj    := conj ("|" conj)*
//   conj    := unary ("&" unary)*
//   unary   := "~" unary | "false" | "true" | ident | "(" formula ")"
// `~f` is read as f -> false and `true` as false -> false.  `#` starts a
// comment running to the end of the line.  Throws ParseError.
Formula parse(std::string_view text);

// Text that parses back to a structurally equal formula.  Parentheses are
// minimal except that a co-implication directly under an implication is
// always bracketed.
std::string render(const Formula& f);

}  // namespace bil

#endif  // BIL_FORMULA_HPP
