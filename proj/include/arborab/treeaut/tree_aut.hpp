#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arborab::treeaut {

class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Automorphism of the binary rooted tree truncated at `depth`, stored as its
/// portrait: level k (1-based) carries 2^{k-1} swap bits, one per pair of
/// brother nodes, numbered left to right.
///
/// The label at a node describes the swap seen at that node's *image*
/// position: a leaf with path b_1...b_n goes to b'_1...b'_n where
/// b'_k = b_k xor label(node reached by b'_1...b'_{k-1}). This is the reading
/// under which the portrait (1,01,1010) acts on the eight level-3 nodes as
/// (1 7 3 6)(2 8 4 5).
class TreeAut {
 public:
  static constexpr unsigned kMaxDepth = 24;

  static TreeAut identity(unsigned depth);
  /// Bit i of `code` is the i-th label in level-contiguous order; depth <= 6.
  static TreeAut from_code(unsigned depth, std::uint64_t code);
  /// Comma-separated level bitstrings, e.g. "1,01,1010".
  static TreeAut parse(std::string_view text);

  unsigned depth() const { return depth_; }
  bool label(unsigned level, std::size_t index) const;
  void set_label(unsigned level, std::size_t index, bool value);
  std::uint64_t code() const;

  /// Leaves numbered 1..2^depth left to right.
  std::size_t act_on_leaf(std::size_t leaf) const;
  /// 0-based: perm[i] is the image of leaf i.
  std::vector<std::size_t> leaf_permutation() const;
  /// Image of node `index` on `level` (level depth+1 are the leaves).
  std::vector<std::vector<std::size_t>> node_images() const;

  /// Sum of the level-k labels over F2.
  bool phi(unsigned level) const;
  /// (phi_1, ..., phi_depth) packed, bit k-1 holding phi_k.
  std::uint64_t psi() const;
  /// True iff the sum of phi_i over i in `indices` vanishes.
  bool in_kernel(const std::set<unsigned>& indices) const;

  /// Same element seen on the first `depth` levels.
  TreeAut truncated(unsigned depth) const;
  TreeAut inverse() const;

  std::string to_string() const;

  friend bool operator==(const TreeAut&, const TreeAut&) = default;

 private:
  explicit TreeAut(unsigned depth);
  static std::size_t offset(unsigned level) { return (std::size_t{1} << (level - 1)) - 1; }

  unsigned depth_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// sigma o tau, tau applied first. Throws TreeError on depth mismatch.
TreeAut compose(const TreeAut& sigma, const TreeAut& tau);

/// Disjoint-cycle notation on leaves 1..2^n, fixed points omitted; "()" for
/// the identity.
std::string cycle_notation(const std::vector<std::size_t>& permutation);

/// psi-vector as a bit string "phi_1 phi_2 ...".
std::string psi_string(const TreeAut& sigma);

struct CommutationReport {
  unsigned depth = 0;
  bool exhaustive = true;
  std::uint64_t pairs_examined = 0;
  std::uint64_t qualifying_pairs = 0;
  std::vector<std::pair<TreeAut, TreeAut>> violations;
};

struct CommutationOptions {
  /// Depths above this are sampled instead of enumerated.
  unsigned exhaustive_limit = 3;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5DEECE66DULL;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Checks that every pair with phi_1(sigma) = 1 and psi(sigma), psi(tau)
/// linearly independent fails to commute.
CommutationReport verify_commutation_criterion(unsigned depth, const CommutationOptions& options = {});

}  // namespace arborab::treeaut
