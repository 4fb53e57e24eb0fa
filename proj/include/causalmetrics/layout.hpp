#ifndef CAUSALMETRICS_LAYOUT_HPP
#define CAUSALMETRICS_LAYOUT_HPP

#include <string>
#include <vector>

namespace causalmetrics {

/// One labeled tensor factor of a composite system.
struct Factor {
  std::string label;
  int dim = 1;
};

/// Ordered, labeled subsystem dimensions with index arithmetic.
/// The leftmost factor is the most significant in composite indices.
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Factor> factors);

  /// Single-factor layout.
  static SystemLayout single(const std::string& label, int dim);

  const std::vector<Factor>& factors() const { return factors_; }
  int size() const { return static_cast<int>(factors_.size()); }
  int total_dim() const { return total_dim_; }

  int dim(int pos) const { return factors_.at(pos).dim; }
  std::vector<int> dims() const;

  /// Position of a label; -1 when absent.
  int position(const std::string& label) const;
  bool has(const std::string& label) const { return position(label) >= 0; }

  /// Concatenation (this ⊗ other); labels must stay unique.
  SystemLayout tensor(const SystemLayout& other) const;

  /// Layout of the factors at the given positions, in that order.
  SystemLayout select(const std::vector<int>& positions) const;

  bool operator==(const SystemLayout& other) const;

 private:
  std::vector<Factor> factors_;
  int total_dim_ = 1;
};

} // namespace causalmetrics

#endif
