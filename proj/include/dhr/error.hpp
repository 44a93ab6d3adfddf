#ifndef DHR_ERROR_HPP
#define DHR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dhr {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// A stage-tagged failure; `stage` names the pipeline step that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string &what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string &stage() const { return stage_; }

 private:
  std::string stage_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string &what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace dhr

#endif
