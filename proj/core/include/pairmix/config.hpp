#ifndef PAIRMIX_CONFIG_HPP_
#define PAIRMIX_CONFIG_HPP_

#include <memory>
#include <string>

#include "pair_context.hpp"

namespace pairmix {

//! A pair context loaded from a JSON config file, plus the digest of the
//! file bytes (reports embed it so that a report names its inputs).
struct LoadedConfig {
  std::shared_ptr<PairContext const> context;
  std::string digest;
  std::string path;
};

//! Parses and validates a pair-definition config file. Throws Error with
//! kind ConfigError / ParseError / NotInGroup on invalid input.
LoadedConfig load_pair_config(std::string const& path);

//! Same, from an in-memory JSON document (used for inline inner configs and
//! by tests).
std::shared_ptr<PairContext const> context_from_json_text(
    std::string const& text);

//! FNV-1a (64-bit) of the raw bytes, as "fnv1a64:<16 hex digits>".
std::string fnv1a64_hex(std::string const& bytes);

}  // namespace pairmix

#endif  // PAIRMIX_CONFIG_HPP_
