#include "adaptt/desc_table.hpp"

#include <atomic>

#include "adaptt/check.hpp"
#include "adaptt/inductive.hpp"

namespace adaptt {

DescTable& DescTable::global() {
  static DescTable* table = new DescTable;
  static std::atomic<bool> ready{false};
  static bool seeding = false;
  if (ready.load(std::memory_order_acquire)) return *table;
  std::lock_guard<std::recursive_mutex> lk(table->mu_);
  if (!seeding) {
    seeding = true;
    registerBuiltins(*table);
    ready.store(true, std::memory_order_release);
  }
  return *table;
}

const IndDesc* DescTable::find(const DescRef& name) const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  auto it = descs_.find(name);
  return it == descs_.end() ? nullptr : it->second.get();
}

const IndDesc& DescTable::get(const DescRef& name) const {
  if (const IndDesc* d = find(name)) return *d;
  throw KernelError("UnboundVariable", "unknown datatype " + name);
}

void DescTable::add(IndDesc d) {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  if (auto it = descs_.find(d.name); it != descs_.end()) {
    if (eq(*it->second, d)) return;
    throw KernelError("IllFormedDescription", "datatype " + d.name + " is already defined differently");
  }
  std::string name = d.name;
  descs_.emplace(name, std::make_unique<IndDesc>(std::move(d)));
  try {
    checkDesc(*descs_.at(name));
  } catch (...) {
    forgetConData(name);
    descs_.erase(name);
    throw;
  }
  order_.push_back(name);
}

std::vector<std::string> DescTable::names() const {
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return order_;
}

}  // namespace adaptt
