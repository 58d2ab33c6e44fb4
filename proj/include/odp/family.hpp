#ifndef ODP_FAMILY_HPP
#define ODP_FAMILY_HPP

#include <array>
#include <string_view>

namespace odp {

// Constraint families of the delivery-planning program, numbered as the
// equations they come from. kSymmetry is an optional extra family.
enum class ConstraintFamily {
  kAssignment = 3,           // truck or carrier covers every demand
  kCapacity = 4,             // reserved weight within truck capacity
  kTruckUse = 5,             // assignments only to paid trucks
  kNoSelfLoop = 6,           // V(u,u) = 0
  kDepotIn = 7,              // at most one arc into the depot
  kDepotOut = 8,             // at most one arc out of the depot
  kFlowIn = 9,               // arcs into i equal X(i,t) D(i)
  kFlowOut = 10,             // arcs out of i equal X(i,t) D(i)
  kLimitMorning = 11,        // morning travel distance limit
  kLimitAfternoon = 12,      // afternoon travel distance limit
  kLimitEvening = 13,        // evening travel distance limit
  kSubtour = 14,             // MTZ ordering
  kMorningBeforeAfternoon = 15,
  kAfternoonBeforeEvening = 16,
  kFirstStageDomain = 17,    // X, W binary
  kSecondStageDomain = 18,   // Y, V binary
  kOrderDomain = 19,         // S integer in [0, n']
  kSymmetry = 100,           // optional identical-truck ordering rows
};

inline constexpr std::array<ConstraintFamily, 14> kModelFamilies = {
    ConstraintFamily::kAssignment,      ConstraintFamily::kCapacity,
    ConstraintFamily::kTruckUse,        ConstraintFamily::kNoSelfLoop,
    ConstraintFamily::kDepotIn,         ConstraintFamily::kDepotOut,
    ConstraintFamily::kFlowIn,          ConstraintFamily::kFlowOut,
    ConstraintFamily::kLimitMorning,    ConstraintFamily::kLimitAfternoon,
    ConstraintFamily::kLimitEvening,    ConstraintFamily::kSubtour,
    ConstraintFamily::kMorningBeforeAfternoon,
    ConstraintFamily::kAfternoonBeforeEvening};

inline int equation_number(ConstraintFamily f) { return static_cast<int>(f); }

std::string_view family_name(ConstraintFamily f);

}  // namespace odp

#endif  // ODP_FAMILY_HPP
