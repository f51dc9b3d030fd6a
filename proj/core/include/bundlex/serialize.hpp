#pragma once

#include <string>

#include "bundlex/bundle.hpp"
#include "bundlex/extend.hpp"
#include "bundlex/verify.hpp"

namespace bundlex::io {

/* JSON text formats. Keys are emitted sorted and numbers in shortest
 * round-trip form, so serialization is canonical: equal values produce
 * byte-identical text. Complex numbers are [re, im] pairs; words list
 * their factors in application order and say so in an "order" field. */

std::string serialize_spec(const ext::BundleSpec& spec);

// Throws ParseError on malformed text, unknown fields of the wrong shape,
// or a word that does not declare application order.
ext::BundleSpec parse_spec(const std::string& text);

std::string serialize_extension(const ext::ExtendedBundle& ext);

struct ReportMeta {
  std::string generated_at;  // RFC 3339; excluded from determinism checks
  double wall_clock_seconds = 0.0;
};

std::string serialize_report(const ext::VerificationReport& rep,
                             const ReportMeta& meta);

}  // namespace bundlex::io
