#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "taskgraph/error.hpp"

namespace taskgraph {

// Maps application names to their functional category. Knowledge complexity
// counts distinct categories, so an unregistered application is a hard error
// rather than a silent "unknown" bucket.
class AppCategoryRegistry {
 public:
  AppCategoryRegistry() = default;

  void add(const std::string& application, const std::string& category) {
    auto [it, inserted] = app_to_category_.emplace(application, category);
    if (!inserted && it->second != category)
      throw Error("application '" + application +
                  "' already registered under category '" + it->second + "'");
    it->second = category;
  }

  const std::string& category_of(const std::string& application) const {
    auto it = app_to_category_.find(application);
    if (it == app_to_category_.end())
      throw Error("application '" + application + "' is not registered");
    return it->second;
  }

  bool contains(const std::string& application) const {
    return app_to_category_.count(application) > 0;
  }

  std::size_t application_count() const { return app_to_category_.size(); }

  std::set<std::string> categories() const {
    std::set<std::string> out;
    for (const auto& [app, cat] : app_to_category_) out.insert(cat);
    return out;
  }

  // category -> sorted applications, for serialization and reports
  std::map<std::string, std::vector<std::string>> by_category() const {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [app, cat] : app_to_category_) out[cat].push_back(app);
    return out;
  }

  friend bool operator==(const AppCategoryRegistry&,
                         const AppCategoryRegistry&) = default;

 private:
  std::map<std::string, std::string> app_to_category_;
};

// The built-in registry: 12 categories covering 49 desktop applications.
inline const AppCategoryRegistry& default_registry() {
  static const AppCategoryRegistry registry = [] {
    AppCategoryRegistry r;
    const std::map<std::string, std::vector<std::string>> table = {
        {"Social Communication", {"Zoom Workplace", "Skype", "People", "Mail"}},
        {"Multimedia Playback", {"Media Player", "Spotify", "Photos", "TuneIn"}},
        {"Multimedia Editing",
         {"Adobe Photoshop Express", "Microsoft Clipchamp", "paint.net",
          "Openshot", "Handbrake", "Paint"}},
        {"Office", {"Word", "PowerPoint", "Excel"}},
        {"Utility Tools",
         {"Calculator", "7-Zip", "PDF24", "Power Automate", "Wikipedia",
          "BreeZip", "Maps", "Calendar", "Zotero", "DeepL"}},
        {"Programming",
         {"Visual Studio Code", "Cursor", "Windows PowerShell ISE"}},
        {"System Management",
         {"File Explorer", "Settings", "Control Panel", "Microsoft Store"}},
        {"Web Browsing", {"Google Chrome", "Microsoft Edge"}},
        {"Screen Capture",
         {"Record Screen", "Snipping Tool", "OBS Studio", "ShareX"}},
        {"Task Management", {"Microsoft To Do", "Todoist", "Notion"}},
        {"Note Management",
         {"Evernote", "OneNote", "Sticky Notes", "Sticky Notes (New)"}},
        {"Lifestyle", {"Recipe Keeper", "paisa"}},
    };
    for (const auto& [category, apps] : table)
      for (const auto& app : apps) r.add(app, category);
    return r;
  }();
  return registry;
}

}  // namespace taskgraph
