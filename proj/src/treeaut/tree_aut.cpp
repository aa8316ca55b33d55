#include "arborab/treeaut/tree_aut.hpp"

#include <algorithm>

namespace arborab::treeaut {

TreeAut::TreeAut(unsigned depth) : depth_(depth) {
  if (depth == 0 || depth > kMaxDepth) throw TreeError("tree depth must be in 1.." + std::to_string(kMaxDepth));
  const std::size_t nbits = (std::size_t{1} << depth) - 1;
  bits_.assign((nbits + 63) / 64, 0);
}

TreeAut TreeAut::identity(unsigned depth) { return TreeAut(depth); }

TreeAut TreeAut::from_code(unsigned depth, std::uint64_t code) {
  if (depth > 6) throw TreeError("from_code: depth must be at most 6");
  TreeAut t(depth);
  const std::size_t nbits = (std::size_t{1} << depth) - 1;
  t.bits_[0] = nbits == 64 ? code : (code & ((std::uint64_t{1} << nbits) - 1));
  return t;
}

TreeAut TreeAut::parse(std::string_view text) {
  std::vector<std::string_view> levels;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    levels.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (levels.empty() || levels.size() > kMaxDepth) throw TreeError("portrait: bad number of levels");
  TreeAut t(static_cast<unsigned>(levels.size()));
  for (unsigned k = 1; k <= levels.size(); ++k) {
    const auto level = levels[k - 1];
    if (level.size() != (std::size_t{1} << (k - 1))) {
      throw TreeError("portrait level " + std::to_string(k) + " must have " +
                      std::to_string(std::size_t{1} << (k - 1)) + " bits: '" + std::string(text) + "'");
    }
    for (std::size_t j = 0; j < level.size(); ++j) {
      if (level[j] != '0' && level[j] != '1') throw TreeError("portrait digits must be 0 or 1: '" + std::string(text) + "'");
      t.set_label(k, j, level[j] == '1');
    }
  }
  return t;
}

bool TreeAut::label(unsigned level, std::size_t index) const {
  const std::size_t bit = offset(level) + index;
  return (bits_[bit / 64] >> (bit % 64)) & 1u;
}

void TreeAut::set_label(unsigned level, std::size_t index, bool value) {
  if (level == 0 || level > depth_ || index >= (std::size_t{1} << (level - 1))) throw TreeError("label out of range");
  const std::size_t bit = offset(level) + index;
  const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
  bits_[bit / 64] = value ? (bits_[bit / 64] | mask) : (bits_[bit / 64] & ~mask);
}

std::uint64_t TreeAut::code() const {
  if (depth_ > 6) throw TreeError("code: depth must be at most 6");
  return bits_[0];
}

std::vector<std::vector<std::size_t>> TreeAut::node_images() const {
  std::vector<std::vector<std::size_t>> img(depth_ + 2);
  img[1] = {0};
  for (unsigned k = 1; k <= depth_; ++k) {
    const std::size_t width = std::size_t{1} << (k - 1);
    img[k + 1].resize(2 * width);
    for (std::size_t j = 0; j < width; ++j) {
      const std::size_t w = img[k][j];
      const std::size_t flip = label(k, w) ? 1 : 0;
      img[k + 1][2 * j] = 2 * w + flip;
      img[k + 1][2 * j + 1] = 2 * w + (1 - flip);
    }
  }
  return img;
}

std::vector<std::size_t> TreeAut::leaf_permutation() const { return node_images()[depth_ + 1]; }

std::size_t TreeAut::act_on_leaf(std::size_t leaf) const {
  const std::size_t leaves = std::size_t{1} << depth_;
  if (leaf < 1 || leaf > leaves) throw TreeError("leaf index out of range 1.." + std::to_string(leaves));
  const std::size_t path = leaf - 1;
  std::size_t image = 0;
  for (unsigned k = 1; k <= depth_; ++k) {
    const std::size_t b = (path >> (depth_ - k)) & 1u;
    image = 2 * image + (b ^ (label(k, image) ? 1u : 0u));
  }
  return image + 1;
}

bool TreeAut::phi(unsigned level) const {
  if (level == 0 || level > depth_) throw TreeError("phi: level out of range");
  bool acc = false;
  for (std::size_t j = 0; j < (std::size_t{1} << (level - 1)); ++j) acc ^= label(level, j);
  return acc;
}

std::uint64_t TreeAut::psi() const {
  std::uint64_t v = 0;
  for (unsigned k = 1; k <= depth_; ++k) {
    if (phi(k)) v |= std::uint64_t{1} << (k - 1);
  }
  return v;
}

bool TreeAut::in_kernel(const std::set<unsigned>& indices) const {
  if (indices.empty()) throw TreeError("in_kernel: index set must be nonempty");
  bool acc = false;
  for (unsigned i : indices) acc ^= phi(i);
  return !acc;
}

TreeAut TreeAut::truncated(unsigned depth) const {
  if (depth == 0 || depth > depth_) throw TreeError("truncated: depth out of range");
  TreeAut t(depth);
  for (unsigned k = 1; k <= depth; ++k) {
    for (std::size_t j = 0; j < (std::size_t{1} << (k - 1)); ++j) t.set_label(k, j, label(k, j));
  }
  return t;
}

TreeAut TreeAut::inverse() const {
  // label_{inv}(w) = label(image of w)
  const auto img = node_images();
  TreeAut t(depth_);
  for (unsigned k = 1; k <= depth_; ++k) {
    for (std::size_t j = 0; j < img[k].size(); ++j) t.set_label(k, j, label(k, img[k][j]));
  }
  return t;
}

std::string TreeAut::to_string() const {
  std::string out;
  for (unsigned k = 1; k <= depth_; ++k) {
    if (k > 1) out += ',';
    for (std::size_t j = 0; j < (std::size_t{1} << (k - 1)); ++j) out += label(k, j) ? '1' : '0';
  }
  return out;
}

TreeAut compose(const TreeAut& sigma, const TreeAut& tau) {
  if (sigma.depth() != tau.depth()) throw TreeError("compose: depth mismatch");
  // label_{sigma tau}(w) = label_sigma(w) xor label_tau(sigma^{-1}(w))
  const auto img = sigma.node_images();
  TreeAut out = TreeAut::identity(sigma.depth());
  for (unsigned k = 1; k <= sigma.depth(); ++k) {
    for (std::size_t u = 0; u < img[k].size(); ++u) {
      const std::size_t w = img[k][u];
      out.set_label(k, w, sigma.label(k, w) != tau.label(k, u));
    }
  }
  return out;
}

std::string cycle_notation(const std::vector<std::size_t>& permutation) {
  std::vector<bool> done(permutation.size(), false);
  std::string out;
  for (std::size_t start = 0; start < permutation.size(); ++start) {
    if (done[start] || permutation[start] == start) continue;
    out += '(';
    std::size_t i = start;
    bool first = true;
    while (!done[i]) {
      done[i] = true;
      if (!first) out += ' ';
      out += std::to_string(i + 1);
      first = false;
      i = permutation[i];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::string psi_string(const TreeAut& sigma) {
  std::string out;
  const auto v = sigma.psi();
  for (unsigned k = 1; k <= sigma.depth(); ++k) out += ((v >> (k - 1)) & 1u) ? '1' : '0';
  return out;
}

}  // namespace arborab::treeaut
