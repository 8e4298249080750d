#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace bks {

struct BlockInfo {
  std::string name;
  Eigen::Index begin = 0;
  Eigen::Index cols = 0;
  // Names of the two blocks that generated this one; empty for a starting block.
  std::string source_first;
  std::string source_second;
};

// Orthonormal columns partitioned into consecutive named blocks.
class BlockBasis {
 public:
  BlockBasis() = default;

  BlockBasis(std::string prefix, const Eigen::MatrixXd& first) : prefix_(std::move(prefix)), matrix_(first) {
    blocks_.push_back({prefix_ + "0", 0, first.cols(), {}, {}});
  }

  Eigen::Index rows() const { return matrix_.rows(); }
  Eigen::Index cols() const { return matrix_.cols(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::string& prefix() const { return prefix_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const BlockInfo& info(std::size_t b) const { return blocks_.at(b); }
  const std::vector<BlockInfo>& blocks() const { return blocks_; }

  Eigen::MatrixXd block(std::size_t b) const {
    const auto& in = blocks_.at(b);
    return matrix_.middleCols(in.begin, in.cols);
  }

  // First min(p, width) columns of block b.
  Eigen::MatrixXd leading(std::size_t b, Eigen::Index p) const {
    const auto& in = blocks_.at(b);
    return matrix_.middleCols(in.begin, std::min(p, in.cols));
  }

  // Appends a block (possibly empty). The caller guarantees orthonormality.
  void append(const Eigen::MatrixXd& q, std::string source_first, std::string source_second) {
    if (q.cols() > 0 && q.rows() != matrix_.rows()) {
      throw std::invalid_argument("BlockBasis::append: row count mismatch");
    }
    const Eigen::Index begin = matrix_.cols();
    if (q.cols() > 0) {
      matrix_.conservativeResize(Eigen::NoChange, begin + q.cols());
      matrix_.rightCols(q.cols()) = q;
    }
    blocks_.push_back({prefix_ + std::to_string(blocks_.size()), begin, q.cols(),
                       std::move(source_first), std::move(source_second)});
  }

 private:
  std::string prefix_;
  Eigen::MatrixXd matrix_;
  std::vector<BlockInfo> blocks_;
};

}  // namespace bks
