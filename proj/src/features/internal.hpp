#pragma once

#include <span>
#include <string>
#include <vector>

#include "botminer/features.hpp"
#include "botminer/textstats.hpp"

namespace botminer::features_detail {

// Entity extraction and tokenization of one tweet, shared by the content
// extractors.
struct TweetText {
  text::EntitySet entities;
  text::TokenizedText tokens;  // of the stripped text
};

std::vector<TweetText> analyze(std::span<const TweetRecord> tweets);

// Tweet indices in chronological order when every tweet has a timestamp,
// else file order.
std::vector<std::size_t> chronological_order(std::span<const TweetRecord> tweets);

std::string dna_content(std::span<const TweetRecord> tweets, std::span<const TweetText> analyzed);
FeatureRecord dna_features(std::span<const TweetRecord> tweets, std::span<const TweetText> analyzed);
FeatureRecord tweet_stylometry(std::span<const TweetRecord> tweets,
                               std::span<const TweetText> analyzed,
                               const text::LanguageDetector& detector);
FeatureRecord tweet_readability(std::span<const TweetText> analyzed);

}  // namespace botminer::features_detail
