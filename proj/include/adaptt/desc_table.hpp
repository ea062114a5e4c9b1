#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "adaptt/syntax.hpp"

namespace adaptt {

// Append-only table of datatype descriptions. Descriptions are checked when
// registered; re-registering a structurally equal description is a no-op.
class DescTable {
 public:
  static DescTable& global();

  const IndDesc* find(const DescRef& name) const;
  const IndDesc& get(const DescRef& name) const;
  void add(IndDesc d);
  std::vector<std::string> names() const;

 private:
  mutable std::recursive_mutex mu_;
  std::map<std::string, std::unique_ptr<IndDesc>> descs_;
  std::vector<std::string> order_;
};

inline const IndDesc& descOf(const DescRef& name) { return DescTable::global().get(name); }

}  // namespace adaptt
