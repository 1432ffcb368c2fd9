#pragma once

#include <optional>

#include <json.hpp>

#include "acs/moments.hpp"
#include "acs/states.hpp"

namespace acs {

/// {"repr": {"k", "flavor"}, "params": {"z","u","v","w"} | null,
///  "amplitudes": [[re, im], ...], "tail_norm"}
nlohmann::json state_to_json(const StateVector& psi, const AcsParams* params = nullptr);

struct StateDocument {
  std::optional<AcsParams> params;
  StateVector state;
};

/// Inverse of state_to_json. Throws DomainError on malformed documents.
StateDocument state_from_json(const nlohmann::json& doc);

/// Flat object with the MomentReport field names; fields that do not exist for
/// the state are null and carry a sibling "<field>_reason".
nlohmann::json moments_to_json(const MomentReport& report);

}  // namespace acs
