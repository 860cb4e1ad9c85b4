#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lexalign::testing {

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(LEXALIGN_TEST_DATA_DIR) / name;
}

Transcript battery_transcript() {
  std::ifstream in(data_path("battery.jsonl"));
  if (!in) throw std::runtime_error("missing battery.jsonl");
  return parse_transcript(in, TranscriptFormat::jsonl);
}

Dialogue battery_emma_student() {
  for (auto& d : split_dyadic(battery_transcript())) {
    if (d.pair[0] == "Emma" && d.pair[1] == "StudentA") return d;
  }
  throw std::runtime_error("Emma/StudentA dialogue not found");
}

Dialogue make_dialogue(const std::vector<std::pair<std::string, std::string>>& turns,
                       const std::string& id) {
  Dialogue d;
  d.conversation_id = id;
  d.pair = {"A", "B"};
  for (std::size_t i = 0; i < turns.size(); ++i) {
    Utterance u;
    u.turn_index = i;
    u.speaker = turns[i].first;
    u.responder = u.speaker == "A" ? "B" : "A";
    u.text = turns[i].second;
    u.tokens = tokenize(u.text);
    d.utterances.push_back(std::move(u));
  }
  return d;
}

Dialogue relabel(const Dialogue& d) {
  Dialogue out = d;
  const auto swap = [&](const std::string& s) { return s == d.pair[0] ? d.pair[1] : d.pair[0]; };
  for (auto& u : out.utterances) {
    u.speaker = swap(u.speaker);
    u.responder = swap(u.responder);
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() /
             ("lexalign-" + tag + "-" + std::to_string(rng() % 1000000007));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace lexalign::testing
