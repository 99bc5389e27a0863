#pragma once

#include <map>
#include <string>

#include "quadel/control.hpp"
#include "quadel/dynamics.hpp"

namespace quadel {

/// Parses "key = value" lines; '#' starts a comment, blank lines skipped.
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::map<std::string, std::string> load_key_values(const std::string& path);

/// Overlays recognized keys onto the defaults. Gains use
/// <channel>_{kp,ki,kd,imin,imax,omin,omax} with channels att_roll,
/// att_pitch, att_yaw, pos_x, pos_y, pos_z; the remaining keys mirror the
/// struct field names.
ControllerConfig controller_config_from_map(const std::map<std::string, std::string>& kv);
QuadParams quad_params_from_map(const std::map<std::string, std::string>& kv);

/// The shipped defaults rendered as a config file.
std::string default_config_text();

}  // namespace quadel
