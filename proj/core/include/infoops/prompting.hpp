#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace infoops {

enum class PromptId { zs1, zs2, zs3, zs4, few_shot, user_instruction };

std::string to_string(PromptId id);
PromptId prompt_id_from_string(const std::string& s);

// Built-in template bodies; identical to the packaged templates/ files.
const std::string& default_template(PromptId id);

// Reads a template file, stripping one trailing newline.
std::string load_template(const std::filesystem::path& path);

// Replaces each {slot}; every slot must occur in the template.
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& slots);

std::string zero_shot_prompt(int variant, const std::string& tweet_text,
                             const std::string* template_override = nullptr);

std::string few_shot_prompt(const std::string& driver_example,
                            const std::string& organic_example,
                            const std::string& tweet_text, bool organic_first = false,
                            const std::string* template_override = nullptr);

// The exact user-task instruction sentence.
std::string user_instruction();

}  // namespace infoops
