#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lrgeom {

enum class Status { Pass, Fail, Error, Info };

std::string to_string(Status s);

struct Entry {
  std::string task;
  std::vector<int> index;  // 1-based generator/tuple indices, may be empty
  Status status = Status::Pass;
  std::string note;
  std::vector<std::pair<std::string, std::string>> values;
};

class Report {
 public:
  void add(Entry e) { entries_.push_back(std::move(e)); }
  void add(const std::string& task, std::vector<int> index, bool ok, std::string note = {},
           std::vector<std::pair<std::string, std::string>> values = {});
  void info(const std::string& task, std::string note, std::vector<std::pair<std::string, std::string>> values = {});
  void error(const std::string& task, std::string note);
  void append(const Report& other);

  const std::vector<Entry>& entries() const { return entries_; }
  bool passed() const;
  std::size_t count(Status s) const;
  // First failing entry or nullptr.
  const Entry* first_failure() const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace lrgeom
