#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "fcsim/core.hpp"

namespace fcsim {

enum class Commodity : std::uint8_t {
  FreshLwrFuel,
  FreshSfrFuel,
  SpentLwrFuel,
  SpentSfrFuel,
  SeparatedFissile,
  DepletedUranium,
  SeparatedUranium,
  Waste,
};

std::string_view to_string(Commodity c);

struct FacilityId {
  std::uint32_t value = 0;
  auto operator<=>(const FacilityId&) const = default;
};

/// A facility asking for material this step. Indivisible requests are filled
/// in whole multiples of lot_size (partial fills allowed); divisible requests
/// take any mass. Higher preference is served first.
struct Request {
  FacilityId requester;
  Commodity commodity = Commodity::FreshLwrFuel;
  double quantity = 0.0;
  bool divisible = true;
  double lot_size = 0.0;
  double preference = 1.0;
  /// Secondary ordering among equal preferences, ahead of requester id.
  /// Zero for every request gives pure requester-id ordering.
  std::uint64_t tie_key = 0;
};

/// An offer against one request. Several bids from one supplier may offer the
/// same inventory; the supplier cap bounds what is actually committed.
struct Bid {
  FacilityId supplier;
  std::size_t request = 0;  // index into the request list
  double available = 0.0;
  Composition composition{};
};

struct Allocation {
  FacilityId supplier;
  FacilityId requester;
  Commodity commodity = Commodity::FreshLwrFuel;
  std::size_t request = 0;
  double mass = 0.0;
  Material payload;
};

using SupplierCaps = std::map<FacilityId, double>;

/// Resolution strategy for one step's requests and bids.
class Allocator {
 public:
  virtual ~Allocator() = default;
  virtual std::vector<Allocation> resolve(std::span<const Request> requests,
                                          std::span<const Bid> bids,
                                          const SupplierCaps& supplier_caps) const = 0;
};

/// Serves requests in descending preference; ties go by tie_key, then
/// requester id, then submission order. Within a request, bids are drawn in
/// submission order. Suppliers absent from the cap map are limited only by
/// their bids.
class GreedyAllocator final : public Allocator {
 public:
  std::vector<Allocation> resolve(std::span<const Request> requests, std::span<const Bid> bids,
                                  const SupplierCaps& supplier_caps) const override;
};

std::vector<Allocation> resolve(std::span<const Request> requests, std::span<const Bid> bids,
                                const SupplierCaps& supplier_caps);

/// Request preference that favors requesters needing fewer lots to reach a
/// full core. Equals base_pref at one lot and drops by one per extra lot.
double fuel_sharing_preference(double base_pref, int lots_needed);

/// Number of whole lots contained in `mass`, tolerant to rounding.
long whole_lots(double mass, double lot_size);

}  // namespace fcsim
