#include "fcsim/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fcsim {

std::string_view to_string(Commodity c) {
  switch (c) {
    case Commodity::FreshLwrFuel:
      return "fresh-LWR-fuel";
    case Commodity::FreshSfrFuel:
      return "fresh-SFR-fuel";
    case Commodity::SpentLwrFuel:
      return "spent-LWR-fuel";
    case Commodity::SpentSfrFuel:
      return "spent-SFR-fuel";
    case Commodity::SeparatedFissile:
      return "separated-fissile";
    case Commodity::DepletedUranium:
      return "DU";
    case Commodity::SeparatedUranium:
      return "separated-U";
    case Commodity::Waste:
      return "waste";
  }
  return "unknown";
}

long whole_lots(double mass, double lot_size) {
  if (!(lot_size > 0.0) || !(mass > 0.0)) {
    return 0;
  }
  if (std::isinf(mass)) {
    return std::numeric_limits<long>::max();
  }
  return static_cast<long>(std::floor(mass / lot_size + kMassRelTol));
}

double fuel_sharing_preference(double base_pref, int lots_needed) {
  if (lots_needed < 1) {
    throw ValueError("lots_needed must be at least 1, got " + std::to_string(lots_needed));
  }
  return base_pref - static_cast<double>(lots_needed - 1);
}

std::vector<Allocation> GreedyAllocator::resolve(std::span<const Request> requests,
                                                 std::span<const Bid> bids,
                                                 const SupplierCaps& supplier_caps) const {
  for (const auto& b : bids) {
    if (b.request >= requests.size()) {
      throw ValueError("bid references unknown request " + std::to_string(b.request));
    }
  }

  std::vector<std::size_t> order(requests.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Request& ra = requests[a];
    const Request& rb = requests[b];
    if (ra.preference != rb.preference) {
      return ra.preference > rb.preference;
    }
    if (ra.tie_key != rb.tie_key) {
      return ra.tie_key < rb.tie_key;
    }
    return ra.requester < rb.requester;
  });

  std::vector<std::vector<std::size_t>> bids_for(requests.size());
  for (std::size_t i = 0; i < bids.size(); ++i) {
    bids_for[bids[i].request].push_back(i);
  }

  std::map<FacilityId, double> supplier_left = supplier_caps;
  auto supplier_room = [&](FacilityId s) {
    auto it = supplier_left.find(s);
    return it == supplier_left.end() ? std::numeric_limits<double>::infinity() : it->second;
  };

  std::vector<double> bid_left(bids.size());
  for (std::size_t i = 0; i < bids.size(); ++i) {
    bid_left[i] = std::max(0.0, bids[i].available);
  }

  std::vector<Allocation> out;
  for (std::size_t r : order) {
    const Request& req = requests[r];
    double need = req.quantity;
    for (std::size_t bi : bids_for[r]) {
      if (need <= 0.0) {
        break;
      }
      const Bid& bid = bids[bi];
      const double room = std::min({need, bid_left[bi], supplier_room(bid.supplier)});
      double take = 0.0;
      if (req.divisible) {
        take = room;
      } else {
        take = static_cast<double>(whole_lots(room, req.lot_size)) * req.lot_size;
      }
      if (!(take > 0.0) || std::isinf(take)) {
        continue;
      }
      need -= take;
      bid_left[bi] -= take;
      if (auto it = supplier_left.find(bid.supplier); it != supplier_left.end()) {
        it->second -= take;
      }
      out.push_back(Allocation{bid.supplier, req.requester, req.commodity, r, take,
                               Material::from_composition(take, bid.composition)});
    }
  }
  return out;
}

std::vector<Allocation> resolve(std::span<const Request> requests, std::span<const Bid> bids,
                                const SupplierCaps& supplier_caps) {
  return GreedyAllocator{}.resolve(requests, bids, supplier_caps);
}

}  // namespace fcsim
