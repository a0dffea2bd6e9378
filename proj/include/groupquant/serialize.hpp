#ifndef GROUPQUANT_SERIALIZE_HPP
#define GROUPQUANT_SERIALIZE_HPP

#include <string>

#include "groupquant/bundle.hpp"
#include "groupquant/symbol.hpp"

// vendor single-header json exposes nlohmann::json
#include "json.hpp"

namespace gq {

using Json = nlohmann::json;

// Symbol schema: { group, band, in_dim, out_dim, kind, entries: [ { i, r,
// x_index (sampled only), irrep_label, re, im } ] }. Numbers serialize as
// shortest round-trip decimals (<= 17 significant digits, bit-exact).
Json symbol_to_json(const MatrixSymbol& sigma);
MatrixSymbol symbol_from_json(const Json& j, const std::shared_ptr<const GroupModel>& model,
                              std::shared_ptr<const QuadratureGrid> grid = nullptr);

Json coefficients_to_json(const FourierCoefficients& c);
Json field_to_json(const VectorField& f);
Json section_to_json(const SectionField& s);

// Atomic write: temp file in the target directory, then rename.
void write_text_atomic(const std::string& path, const std::string& contents);

}  // namespace gq

#endif
