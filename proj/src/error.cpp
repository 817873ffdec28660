#include "tweetsense/error.hpp"

namespace tweetsense {

MissingFile::MissingFile(const std::string& path)
    : Error("missing file: " + path), path_(path) {}

MalformedRow::MalformedRow(const std::string& file, std::size_t line_no, const std::string& why)
    : Error(file + ":" + std::to_string(line_no) + ": malformed row: " + why), line_no_(line_no) {}

DuplicateId::DuplicateId(const std::string& id) : Error("duplicate tweet id: " + id) {}

MissingLexicon::MissingLexicon(const std::string& name) : Error("missing lexicon: " + name) {}

MalformedLexiconRow::MalformedLexiconRow(const std::string& name, std::size_t line_no,
                                         const std::string& why)
    : Error(name + ":" + std::to_string(line_no) + ": malformed lexicon row: " + why) {}

FetchFailed::FetchFailed(const std::string& url, const std::string& cause)
    : Error("fetch failed for " + url + ": " + cause), url_(url) {}

EmptyCorpus::EmptyCorpus() : Error("corpus is empty") {}

EmptyTrainingSet::EmptyTrainingSet() : Error("training set is empty") {}

NegativeFeature::NegativeFeature(std::size_t index)
    : Error("negative feature value at column " + std::to_string(index)) {}

NonFiniteFeature::NonFiniteFeature(std::size_t index)
    : Error("non-finite feature value at column " + std::to_string(index)) {}

MissingClass::MissingClass(const std::string& class_name)
    : Error("class '" + class_name + "' has no training examples but needs an empirical prior") {}

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t got)
    : Error("dimension mismatch: model expects " + std::to_string(expected) + " features, got " +
            std::to_string(got)) {}

FoldTooSmall::FoldTooSmall(const std::string& class_name, std::size_t members, int folds)
    : Error("class '" + class_name + "' has " + std::to_string(members) +
            " examples, fewer than the " + std::to_string(folds) + " folds requested") {}

ClassMissingInFold::ClassMissingInFold(const std::string& class_name)
    : Error("class '" + class_name + "' is missing from the training data") {}

LengthMismatch::LengthMismatch(std::size_t a, std::size_t b)
    : Error("length mismatch: " + std::to_string(a) + " predictions vs " + std::to_string(b) +
            " gold labels") {}

UnknownFormatVersion::UnknownFormatVersion(int version)
    : Error("unknown model format_version " + std::to_string(version)) {}

}  // namespace tweetsense
