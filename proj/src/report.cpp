#include "lrgeom/report.hpp"

namespace lrgeom {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
    case Status::Info: return "info";
  }
  return "?";
}

void Report::add(const std::string& task, std::vector<int> index, bool ok, std::string note,
                 std::vector<std::pair<std::string, std::string>> values) {
  entries_.push_back({task, std::move(index), ok ? Status::Pass : Status::Fail, std::move(note), std::move(values)});
}

void Report::info(const std::string& task, std::string note, std::vector<std::pair<std::string, std::string>> values) {
  entries_.push_back({task, {}, Status::Info, std::move(note), std::move(values)});
}

void Report::error(const std::string& task, std::string note) {
  entries_.push_back({task, {}, Status::Error, std::move(note), {}});
}

void Report::append(const Report& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool Report::passed() const {
  for (const auto& e : entries_)
    if (e.status == Status::Fail || e.status == Status::Error) return false;
  return true;
}

std::size_t Report::count(Status s) const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.status == s;
  return n;
}

const Entry* Report::first_failure() const {
  for (const auto& e : entries_)
    if (e.status == Status::Fail || e.status == Status::Error) return &e;
  return nullptr;
}

}  // namespace lrgeom
