#include "purcell/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace purcell {

namespace {

std::mutex &handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler &current_handler() {
  static WarningHandler handler = [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return handler;
}

} // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  return std::exchange(current_handler(), std::move(handler));
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (current_handler())
    current_handler()(message);
}

ScopedWarningCapture::ScopedWarningCapture() {
  m_previous = set_warning_handler([this](std::string_view msg) {
    m_text.append(msg);
    m_text.push_back('\n');
    ++m_count;
  });
}

ScopedWarningCapture::~ScopedWarningCapture() {
  set_warning_handler(std::move(m_previous));
}

} // namespace purcell
