#include "odp/family.hpp"

namespace odp {

std::string_view family_name(ConstraintFamily f) {
  switch (f) {
    case ConstraintFamily::kAssignment:
      return "assignment";
    case ConstraintFamily::kCapacity:
      return "capacity";
    case ConstraintFamily::kTruckUse:
      return "truck-use";
    case ConstraintFamily::kNoSelfLoop:
      return "no-self-loop";
    case ConstraintFamily::kDepotIn:
      return "depot-in";
    case ConstraintFamily::kDepotOut:
      return "depot-out";
    case ConstraintFamily::kFlowIn:
      return "flow-in";
    case ConstraintFamily::kFlowOut:
      return "flow-out";
    case ConstraintFamily::kLimitMorning:
      return "morning-limit";
    case ConstraintFamily::kLimitAfternoon:
      return "afternoon-limit";
    case ConstraintFamily::kLimitEvening:
      return "evening-limit";
    case ConstraintFamily::kSubtour:
      return "MTZ";
    case ConstraintFamily::kMorningBeforeAfternoon:
      return "morning-before-afternoon";
    case ConstraintFamily::kAfternoonBeforeEvening:
      return "afternoon-before-evening";
    case ConstraintFamily::kFirstStageDomain:
      return "first-stage-domain";
    case ConstraintFamily::kSecondStageDomain:
      return "second-stage-domain";
    case ConstraintFamily::kOrderDomain:
      return "order-domain";
    case ConstraintFamily::kSymmetry:
      return "symmetry";
  }
  return "unknown";
}

}  // namespace odp
