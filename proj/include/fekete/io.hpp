#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fekete/checker.hpp"
#include "fekete/constructions.hpp"
#include "fekete/limits.hpp"
#include "fekete/sequence.hpp"

namespace fekete::io {

using Json = nlohmann::ordered_json;

// Sequences. JSON: {"values": ["1", "1/2", 2, ...], "offset": 1}; a
// construction output is also accepted through its "b" field. CSV: lines
// "index,value" covering 1..H exactly once. All failures throw ParseError.
SequencePrefix parse_sequence(std::string_view text);  // JSON if it starts with '{', else CSV
SequencePrefix parse_sequence_json(std::string_view text);
SequencePrefix parse_sequence_csv(std::string_view text);
std::string serialize_sequence_json(const SequencePrefix& a);
std::string serialize_sequence_csv(const SequencePrefix& a);

/// "zero", a bare family name ("floor_sqrt"), or "family:name[,k=v|,v...]".
/// Positional parameters fill c then delta.
FamilySpec parse_family_spec(std::string_view text);

/// {"family": name, "params": {...}, "H": n} or {"values": [...]}. A family
/// document without "H" uses default_horizon.
ErrorTerm parse_error_term_json(std::string_view text, std::optional<Index> default_horizon);

/// {"pairs": [[n, m], ...]} or CSV lines "n,m".
PairDomain parse_explicit_domain(std::string_view text);

std::string rational_string(const Rational& x);

Json to_json(const PairDomain& domain);
Json to_json(const ViolationReport& report);
Json to_json(const QSequence& q);
Json to_json(const LimitBracket& bracket);
Json to_json(const MuChainCertificate& cert);
Json to_json(const TwoGoodChain& chain);
Json to_json(const ConstructionOutput& out);
Json to_json(const LinearErrorExample& example);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace fekete::io
