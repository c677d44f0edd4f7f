#include <array>
#include <mutex>
#include <vector>

#include "gdet/errors.hpp"
#include "gdet/group.hpp"

namespace gdet {

namespace {

// Class counts for orders 1..12.
constexpr std::array<int, 12> kClassCounts = {1, 1, 1, 2, 1, 2,
                                              1, 5, 2, 2, 1, 5};

std::vector<FiniteGroup> build_order(int order) {
  switch (order) {
    case 1:
      return {cyclic(1)};
    case 2:
      return {cyclic(2)};
    case 3:
      return {cyclic(3)};
    case 4:
      return {cyclic(4), direct_product(cyclic(2), cyclic(2))};
    case 5:
      return {cyclic(5)};
    case 6:
      return {cyclic(6), symmetric(3)};
    case 7:
      return {cyclic(7)};
    case 8:
      return {cyclic(8), direct_product(cyclic(4), cyclic(2)),
              direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
              dihedral(4), quaternion8()};
    case 9:
      return {cyclic(9), direct_product(cyclic(3), cyclic(3))};
    case 10:
      return {cyclic(10), dihedral(5)};
    case 11:
      return {cyclic(11)};
    case 12:
      return {cyclic(12), direct_product(cyclic(6), cyclic(2)), dihedral(6),
              alternating4(), dicyclic3()};
    default:
      fail(ErrorKind::OrderCapExceeded,
           "catalog covers orders 1..12, got " + std::to_string(order));
  }
}

std::vector<std::vector<FiniteGroup>> build_all() {
  std::vector<std::vector<FiniteGroup>> all;
  all.reserve(12);
  for (int order = 1; order <= 12; ++order) {
    auto groups = build_order(order);
    if (static_cast<int>(groups.size()) != kClassCounts[order - 1])
      fail(ErrorKind::Internal, "catalog count mismatch at order " +
                                    std::to_string(order));
    for (size_t i = 0; i < groups.size(); ++i) {
      if (groups[i].order != order)
        fail(ErrorKind::Internal, "catalog order mismatch: " + groups[i].name);
      for (size_t j = i + 1; j < groups.size(); ++j)
        if (is_isomorphic(groups[i], groups[j]))
          fail(ErrorKind::Internal, "catalog entries " + groups[i].name +
                                        " and " + groups[j].name +
                                        " are isomorphic");
    }
    all.push_back(std::move(groups));
  }
  return all;
}

}  // namespace

const std::vector<FiniteGroup>& catalog(int order) {
  if (order < 1 || order > kCatalogMaxOrder)
    fail(ErrorKind::OrderCapExceeded,
         "catalog covers orders 1..12, got " + std::to_string(order));
  static const std::vector<std::vector<FiniteGroup>> all = build_all();
  return all[order - 1];
}

}  // namespace gdet
