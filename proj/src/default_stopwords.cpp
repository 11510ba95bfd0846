#include "dsumm/preprocess.hpp"

namespace dsumm {

// Built-in English stoplist. Function words, auxiliaries, pronouns and a few
// quantifiers; tweets carry no casing after normalization so everything is
// lowercase. Overridable with --stopwords.
const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words = {
      "a", "about", "above", "after", "again", "against", "ain't", "all",
      "almost", "also", "am", "an", "and", "any", "anyone", "anything", "are",
      "aren't", "around", "as", "at", "be", "because", "been", "before",
      "being", "below", "between", "both", "but", "by", "can", "cannot",
      "can't", "could", "couldn't", "did", "didn't", "do", "does", "doesn't",
      "doing", "done", "don't", "down", "during", "each", "either", "else",
      "even", "ever", "every", "few", "for", "from", "further", "get", "gets",
      "got", "had", "hadn't", "has", "hasn't", "have", "haven't", "having",
      "he", "he'd", "he'll", "her", "here", "here's", "hers", "herself",
      "he's", "him", "himself", "his", "how", "how's", "i", "i'd", "if",
      "i'll", "i'm", "in", "into", "is", "isn't", "it", "its", "it's",
      "itself", "i've", "just", "let", "let's", "like", "many", "may", "me",
      "might", "mightn't", "more", "most", "much", "must", "mustn't", "my",
      "myself", "neither", "never", "no", "nor", "not", "now", "of", "off",
      "on", "once", "one", "only", "onto", "or", "other", "our", "ours",
      "ourselves", "out", "over", "own", "per", "same", "shall", "shan't",
      "she", "she'd", "she'll", "she's", "should", "shouldn't", "since", "so",
      "some", "someone", "something", "still", "such", "than", "that",
      "that'll", "that's", "the", "their", "theirs", "them", "themselves",
      "then", "there", "there's", "these", "they", "they'd", "they'll",
      "they're", "they've", "this", "those", "through", "till", "to", "too",
      "under", "until", "up", "upon", "us", "very", "via", "was", "wasn't",
      "we", "we'd", "we'll", "were", "we're", "weren't", "we've", "what",
      "what's", "when", "when's", "where", "where's", "whether", "which",
      "while", "who", "whom", "who's", "whose", "why", "why's", "will",
      "with", "within", "without", "won't", "would", "wouldn't", "yet", "you",
      "you'd", "you'll", "your", "you're", "yours", "yourself", "yourselves",
      "you've",
  };
  return words;
}

}  // namespace dsumm
