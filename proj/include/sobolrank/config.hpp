#pragma once

#include <iosfwd>
#include <string>

#include "sobolrank/study.hpp"

namespace sobolrank {

/// Study configuration read from a flat key-value file, keeping the raw
/// model/law names for report labelling.
struct StudyFileConfig {
  StudyConfig config;
  std::string model_name;
  std::string law_text;
};

/// Parses the documented study schema:
///
///   model   = sin5 | quad | <phi>:<v>       (required)
///   law     = uniform:a,b | exp:rate        (required)
///   ns      = comma-separated sample sizes  (required)
///   max_lag = integer                       (default 50)
///   avg_ks  = comma-separated integers      (default 5,10,...,50)
///   reps    = integer                       (default 10000)
///   seed    = unsigned integer              (default 1)
///   k_rule  = cube_root | fixed:<k>         (default cube_root)
///
/// '#' starts a comment; blank lines are skipped. Unknown or duplicate keys
/// throw ConfigError naming the key.
StudyFileConfig parse_study_config(std::istream& in, const std::string& source_name);

StudyFileConfig load_study_config(const std::string& path);

}  // namespace sobolrank
