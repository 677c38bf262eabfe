#pragma once

#include <functional>
#include <map>
#include <string>

#include <json.hpp>

#include "taskgraph/error.hpp"
#include "taskgraph/event_log.hpp"

namespace taskgraph {

// True iff some click targeted exactly this control text (case-sensitive).
inline bool check_mouse_clicks(const EventLog& log, const std::string& text) {
  for (const auto& a : log.actions())
    if (a.kind == ActionKind::ClickInput && a.control_text == text)
      return true;
  return false;
}

// True iff the query is a contiguous substring of the concatenated typed
// stream. An empty query matches any stream.
inline bool check_keyboard_types(const EventLog& log, const std::string& text) {
  return log.typed_stream().find(text) != std::string::npos;
}

inline bool check_file_exists(const EventLog& log, const std::string& path) {
  return log.facts().files.count(path) > 0;
}

inline bool check_text_exists_via_ocr(const EventLog& log,
                                      const std::string& text) {
  return log.facts().screen_texts.count(text) > 0;
}

inline bool check_text_exists_via_control(const EventLog& log,
                                          const std::string& text) {
  return log.facts().control_texts.count(text) > 0;
}

inline bool check_text_exists(const EventLog& log, const std::string& text) {
  return check_text_exists_via_ocr(log, text) ||
         check_text_exists_via_control(log, text);
}

inline bool check_clipboard_equals(const EventLog& log,
                                   const std::string& text) {
  return log.facts().clipboard.has_value() && *log.facts().clipboard == text;
}

inline bool check_window_title_contains(const EventLog& log,
                                        const std::string& text) {
  return log.facts().window_title.has_value() &&
         log.facts().window_title->find(text) != std::string::npos;
}

// Control-tree query: the control appears in the fixture control set or was
// the target of any recorded action.
inline bool check_control_exists(const EventLog& log, const std::string& text) {
  if (log.facts().control_texts.count(text)) return true;
  for (const auto& a : log.actions())
    if (a.control_text == text) return true;
  return false;
}

inline bool check_click_count_at_least(const EventLog& log,
                                       const std::string& text, int count) {
  int clicks = 0;
  for (const auto& a : log.actions())
    if (a.kind == ActionKind::ClickInput && a.control_text == text) ++clicks;
  return clicks >= count;
}

inline bool check_scroll_occurred(const EventLog& log) {
  for (const auto& a : log.actions())
    if (a.kind == ActionKind::WheelMouseInput) return true;
  return false;
}

using CheckArgs = nlohmann::json;
using CheckFn = std::function<bool(const EventLog&, const CheckArgs&)>;

namespace detail {

inline std::string require_string(const CheckArgs& args, const char* key,
                                  const std::string& api) {
  if (!args.is_object() || !args.contains(key) || !args[key].is_string())
    throw Error("check api '" + api + "' requires string argument '" + key +
                "'");
  return args[key].get<std::string>();
}

inline int require_int(const CheckArgs& args, const char* key,
                       const std::string& api) {
  if (!args.is_object() || !args.contains(key) ||
      !args[key].is_number_integer())
    throw Error("check api '" + api + "' requires integer argument '" + key +
                "'");
  return args[key].get<int>();
}

}  // namespace detail

// Name -> callable for every registered check API. The first six match the
// documented evaluation surface; the rest fill out the eleven-API contract
// (clipboard, window title, control tree, click count, scroll).
inline const std::map<std::string, CheckFn>& check_api_registry() {
  using detail::require_int;
  using detail::require_string;
  static const std::map<std::string, CheckFn> registry = {
      {"check_mouse_clicks",
       [](const EventLog& log, const CheckArgs& args) {
         return check_mouse_clicks(
             log, require_string(args, "text", "check_mouse_clicks"));
       }},
      {"check_keyboard_types",
       [](const EventLog& log, const CheckArgs& args) {
         return check_keyboard_types(
             log, require_string(args, "text", "check_keyboard_types"));
       }},
      {"check_file_exists",
       [](const EventLog& log, const CheckArgs& args) {
         return check_file_exists(
             log, require_string(args, "file_path", "check_file_exists"));
       }},
      {"check_text_exists_via_ocr",
       [](const EventLog& log, const CheckArgs& args) {
         return check_text_exists_via_ocr(
             log, require_string(args, "text", "check_text_exists_via_ocr"));
       }},
      {"check_text_exists_via_control",
       [](const EventLog& log, const CheckArgs& args) {
         return check_text_exists_via_control(
             log,
             require_string(args, "text", "check_text_exists_via_control"));
       }},
      {"check_text_exists",
       [](const EventLog& log, const CheckArgs& args) {
         return check_text_exists(
             log, require_string(args, "text", "check_text_exists"));
       }},
      {"check_clipboard_equals",
       [](const EventLog& log, const CheckArgs& args) {
         return check_clipboard_equals(
             log, require_string(args, "text", "check_clipboard_equals"));
       }},
      {"check_window_title_contains",
       [](const EventLog& log, const CheckArgs& args) {
         return check_window_title_contains(
             log, require_string(args, "text", "check_window_title_contains"));
       }},
      {"check_control_exists",
       [](const EventLog& log, const CheckArgs& args) {
         return check_control_exists(
             log, require_string(args, "text", "check_control_exists"));
       }},
      {"check_click_count_at_least",
       [](const EventLog& log, const CheckArgs& args) {
         return check_click_count_at_least(
             log, require_string(args, "text", "check_click_count_at_least"),
             require_int(args, "count", "check_click_count_at_least"));
       }},
      {"check_scroll_occurred",
       [](const EventLog& log, const CheckArgs&) {
         return check_scroll_occurred(log);
       }},
  };
  return registry;
}

}  // namespace taskgraph
