#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "gifstile/gifs.hpp"
#include "gifstile/theta.hpp"
#include "gifstile/tiling.hpp"

// JSON formats. Every parser throws std::invalid_argument with a readable
// message on malformed input.
namespace gifstile {

// { dim, scaling_constant?, rigid?, vertices, edges: [{id, tail, head, d,
//   map: {scale?, angle_degrees?, reflect?, ortho?, shift}}], hull_hints? }
// A map without scale gets s^d; with both, they must agree to 1e-9.
Gifs gifs_from_json(const nlohmann::json& j);
// Always writes scale and ortho explicitly, so parsing the output gives the
// same maps bit for bit.
nlohmann::ordered_json gifs_to_json(const Gifs& gifs);

// { prefix: [edge ids], cycle: [edge ids] }, edges in forward orientation.
ThetaParam theta_from_json(const Digraph& g, const nlohmann::json& j);
nlohmann::ordered_json theta_to_json(const Digraph& g, const ThetaParam& theta);

nlohmann::ordered_json similarity_to_json(const Similarity& f);
Similarity similarity_from_json(const nlohmann::json& j);

nlohmann::ordered_json patch_to_json(const Gifs& gifs, const Patch& p);
Patch patch_from_json(const Gifs& gifs, const nlohmann::json& j);

// Names accepted after "builtin:".
std::vector<std::string> bundled_names();
// Raw JSON text of a bundled GIFS; throws std::invalid_argument if unknown.
std::string_view bundled_gifs_text(std::string_view name);

nlohmann::json read_json_file(const std::string& path);
// A file path, or "builtin:<name>".
Gifs load_gifs(const std::string& source);
ThetaParam load_theta(const Digraph& g, const std::string& path);

}  // namespace gifstile
