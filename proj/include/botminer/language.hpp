#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace botminer::text {

/// Pluggable language identification. Implementations must be safe to call
/// concurrently.
class LanguageDetector {
 public:
  virtual ~LanguageDetector() = default;
  virtual std::optional<std::string> detect(std::string_view text) const = 0;
};

/// Character n-gram rank profiles (n = 1..3) compared by out-of-place
/// distance.
class NgramProfileDetector final : public LanguageDetector {
 public:
  static constexpr std::size_t kProfileSize = 300;

  /// Profiles built from language code -> sample corpus.
  explicit NgramProfileDetector(const std::map<std::string, std::string>& corpora);

  /// Profiles for en, es, it, fr, de, pt, nl from the embedded samples.
  static const NgramProfileDetector& bundled();

  /// One "<code>.txt" corpus per language. Throws DetectorUnavailable when
  /// the directory is missing or holds no usable corpus.
  static NgramProfileDetector from_directory(const std::filesystem::path& dir);

  std::optional<std::string> detect(std::string_view text) const override;

  std::vector<std::string> languages() const;

 private:
  struct Profile {
    std::string code;
    std::map<std::u32string, std::size_t> ranks;
  };
  std::vector<Profile> profiles_;
};

/// Strips entities, then returns absent for fewer than 3 remaining
/// characters or no letters; otherwise asks the detector.
std::optional<std::string> detect_language(std::string_view text,
                                           const LanguageDetector& detector);

/// Uses the bundled detector.
std::optional<std::string> detect_language(std::string_view text);

}  // namespace botminer::text
