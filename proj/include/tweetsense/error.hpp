#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tweetsense {

/// Base class for every data-level failure raised by the library. The CLI
/// maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingFile : public Error {
 public:
  explicit MissingFile(const std::string& path);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class MalformedRow : public Error {
 public:
  MalformedRow(const std::string& file, std::size_t line_no, const std::string& why);
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(const std::string& id);
};

class MissingLexicon : public Error {
 public:
  explicit MissingLexicon(const std::string& name);
};

class MalformedLexiconRow : public Error {
 public:
  MalformedLexiconRow(const std::string& name, std::size_t line_no, const std::string& why);
};

class FetchFailed : public Error {
 public:
  FetchFailed(const std::string& url, const std::string& cause);
  const std::string& url() const { return url_; }

 private:
  std::string url_;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus();
};

class EmptyTrainingSet : public Error {
 public:
  EmptyTrainingSet();
};

class NegativeFeature : public Error {
 public:
  explicit NegativeFeature(std::size_t index);
};

class NonFiniteFeature : public Error {
 public:
  explicit NonFiniteFeature(std::size_t index);
};

class MissingClass : public Error {
 public:
  explicit MissingClass(const std::string& class_name);
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got);
};

class FoldTooSmall : public Error {
 public:
  FoldTooSmall(const std::string& class_name, std::size_t members, int folds);
};

class ClassMissingInFold : public Error {
 public:
  explicit ClassMissingInFold(const std::string& class_name);
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b);
};

class UnknownFormatVersion : public Error {
 public:
  explicit UnknownFormatVersion(int version);
};

/// Bad parameter values (thresholds out of range, k < 2, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace tweetsense
