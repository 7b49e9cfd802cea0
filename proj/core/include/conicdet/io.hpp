#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "conicdet/asymptotics.hpp"
#include "conicdet/jump_operator.hpp"
#include "conicdet/spectral_det.hpp"
#include "conicdet/verify.hpp"

namespace conicdet {

enum class Format { csv, json };

Format parse_format(const std::string& name);

// JSON documents (pretty-printed, round-trip double precision).
std::string to_json(const ZetaDetResult& r);
std::string to_json(const JumpDetResult& r);
std::string to_json(const BfkReport& r);
std::string to_json(std::span<const SweepRow> rows, bool timing = true);
std::string to_json(const ExpansionReport& r, std::optional<DivergenceClass> divergence = std::nullopt);

void write(std::ostream& out, Format format, const ZetaDetResult& r);
void write(std::ostream& out, Format format, const JumpDetResult& r);
void write(std::ostream& out, Format format, const BfkReport& r);
void write(std::ostream& out, Format format, std::span<const SweepRow> rows, bool timing = true);
void write(std::ostream& out, Format format, const ExpansionReport& r,
           std::optional<DivergenceClass> divergence = std::nullopt);

}  // namespace conicdet
