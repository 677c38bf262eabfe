#pragma once

#include <array>
#include <optional>
#include <string>

#include "taskgraph/error.hpp"

namespace taskgraph {

enum class ActionKind { ClickInput, WheelMouseInput, KeyboardInput };

inline const char* action_kind_name(ActionKind k) {
  switch (k) {
    case ActionKind::ClickInput: return "click_input";
    case ActionKind::WheelMouseInput: return "wheel_mouse_input";
    default: return "keyboard_input";
  }
}

inline ActionKind action_kind_from_name(const std::string& name) {
  if (name == "click_input") return ActionKind::ClickInput;
  if (name == "wheel_mouse_input") return ActionKind::WheelMouseInput;
  if (name == "keyboard_input") return ActionKind::KeyboardInput;
  throw Error("unknown action kind '" + name + "'");
}

// One agent interaction. Kind-specific arguments live in dedicated fields:
// clicks carry button/double, wheel scrolls carry dx/dy, keyboard input
// carries the typed text.
struct Action {
  ActionKind kind = ActionKind::ClickInput;
  std::string button = "left";
  bool double_click = false;
  int dx = 0;
  int dy = 0;
  std::string text;
  std::optional<std::array<int, 4>> rect;
  std::optional<std::string> control_text;
  std::optional<std::string> description;
  std::optional<std::string> thought;

  static Action click(const std::string& control, std::string button = "left",
                      bool double_click = false) {
    Action a;
    a.kind = ActionKind::ClickInput;
    a.button = std::move(button);
    a.double_click = double_click;
    a.control_text = control;
    return a;
  }

  static Action keys(std::string typed) {
    Action a;
    a.kind = ActionKind::KeyboardInput;
    a.text = std::move(typed);
    return a;
  }

  friend bool operator==(const Action&, const Action&) = default;

  static Action wheel(int dy, int dx = 0) {
    Action a;
    a.kind = ActionKind::WheelMouseInput;
    a.dy = dy;
    a.dx = dx;
    return a;
  }
};

inline void validate_action(const Action& a) {
  if (a.kind == ActionKind::ClickInput) {
    if (a.button != "left" && a.button != "right" && a.button != "middle" &&
        a.button != "x")
      throw Error("click_input with unknown button '" + a.button + "'");
  }
}

}  // namespace taskgraph
