#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lexalign/transcript.hpp"

namespace lexalign::testing {

std::filesystem::path data_path(const std::string& name);

/// The worked-example conversation (22 turns, three participants).
Transcript battery_transcript();

/// Its Emma/StudentA portion.
Dialogue battery_emma_student();

/// Dialogue from (speaker, text) turns between "A" and "B", numbered 0, 1, ...
Dialogue make_dialogue(const std::vector<std::pair<std::string, std::string>>& turns,
                       const std::string& id = "toy");

/// Same dialogue with the two speaker labels exchanged.
Dialogue relabel(const Dialogue& d);

/// Reads a whole file into a string.
std::string slurp(const std::filesystem::path& path);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace lexalign::testing
