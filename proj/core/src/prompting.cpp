#include "infoops/prompting.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace infoops {

namespace {

const std::string kZs1 =
    "Determine if the following tweet is part of an influence campaign. Please answer "
    "with a single word, either \"True\" or \"False\".\n"
    "\n"
    "Tweet: {tweet}";

const std::string kZs2 =
    "An influence campaign, is a coordinated and organized effort by individuals, "
    "groups, or governments to manipulate, shape, or sway public opinion, beliefs, "
    "behaviors, or policies through various forms of communication and media. These "
    "campaigns can take place in both online and offline environments and typically "
    "involve the dissemination of information, disinformation, propaganda, or other "
    "persuasive tactics to achieve specific objectives. These objectives can range from "
    "promoting a particular ideology, supporting a political candidate, destabilizing a "
    "rival nation, or undermining trust in institutions. Influence campaigns can employ "
    "a variety of methods, including social media manipulation, spreading fake news or "
    "false narratives, conducting psychological operations, using targeted advertising, "
    "and leveraging networks of individuals or bots to amplify messages. These "
    "campaigns often aim to exploit vulnerabilities in the information ecosystem and "
    "exploit cognitive biases in order to achieve their goals. Given this context, "
    "determine if the following tweet is part of an influence campaign. Please answer "
    "with a single word, either \"True\" or \"False\".\n"
    "\n"
    "Tweet: {tweet}";

const std::string kZs3 =
    "Determine if the following tweet is part of an InfoOps campaign. Please answer "
    "with a single word, either \"True\" or \"False\".\n"
    "\n"
    "Tweet: {tweet}";

const std::string kZs4 =
    "InfoOps refer to a coordinated effort by individuals or groups to manipulate or "
    "shape public opinion on Twitter by spreading false or misleading information. "
    "These operations can have various objectives, including:\n"
    "- Political Manipulation: Some information operations aim to influence political "
    "events, such as elections or policy decisions, by spreading misinformation or "
    "promoting particular candidates or ideologies.\n"
    "- Social Division: Others may seek to sow discord and amplify existing social or "
    "political divisions by disseminating inflammatory content or exploiting sensitive "
    "issues.\n"
    "- Brand or Reputation Management: Some businesses or organizations may use "
    "Twitter information operations to manage their online reputation by spreading "
    "positive narratives or suppressing negative ones.\n"
    "- Malicious Activities: In some cases, these operations can involve cyberattacks, "
    "identity theft, or the dissemination of harmful malware through links shared on "
    "Twitter.\n"
    "- Amplification of Propaganda: State-sponsored actors or non-state actors may use "
    "Twitter to amplify propaganda, particularly in the context of geopolitical "
    "conflicts.\n"
    "Given this context, determine if the following tweet is part of an InfoOps "
    "campaign. Please answer with a single word, either \"True\" or \"False\".\n"
    "\n"
    "Tweet: {tweet}";

const std::string kFewShot =
    "Example: {driver_example}\n"
    "Answer: True\n"
    "\n"
    "Example: {organic_example}\n"
    "Answer: False\n"
    "\n"
    "Determine if the following tweet is part of an influence campaign. Please answer "
    "with a single word, either \"True\" or \"False\".\n"
    "\n"
    "Tweet: {tweet}";

const std::string kUserInstruction =
    "Determine if the user is actively driving an influence campaign.";

}  // namespace

std::string to_string(PromptId id) {
  switch (id) {
    case PromptId::zs1: return "zs1";
    case PromptId::zs2: return "zs2";
    case PromptId::zs3: return "zs3";
    case PromptId::zs4: return "zs4";
    case PromptId::few_shot: return "few_shot";
    case PromptId::user_instruction: return "user_instruction";
  }
  throw std::logic_error("bad PromptId");
}

PromptId prompt_id_from_string(const std::string& s) {
  for (PromptId id : {PromptId::zs1, PromptId::zs2, PromptId::zs3, PromptId::zs4,
                      PromptId::few_shot, PromptId::user_instruction})
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown prompt id '" + s + "'");
}

const std::string& default_template(PromptId id) {
  switch (id) {
    case PromptId::zs1: return kZs1;
    case PromptId::zs2: return kZs2;
    case PromptId::zs3: return kZs3;
    case PromptId::zs4: return kZs4;
    case PromptId::few_shot: return kFewShot;
    case PromptId::user_instruction: return kUserInstruction;
  }
  throw std::logic_error("bad PromptId");
}

std::string load_template(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open template " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string s = buf.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& slots) {
  std::string out = tmpl;
  for (const auto& [name, value] : slots) {
    const std::string marker = "{" + name + "}";
    auto pos = out.find(marker);
    if (pos == std::string::npos)
      throw std::invalid_argument("template has no {" + name + "} placeholder");
    while (pos != std::string::npos) {
      out.replace(pos, marker.size(), value);
      pos = out.find(marker, pos + value.size());
    }
  }
  return out;
}

std::string zero_shot_prompt(int variant, const std::string& tweet_text,
                             const std::string* template_override) {
  if (tweet_text.empty()) throw std::invalid_argument("zero_shot_prompt: empty tweet text");
  PromptId id;
  switch (variant) {
    case 1: id = PromptId::zs1; break;
    case 2: id = PromptId::zs2; break;
    case 3: id = PromptId::zs3; break;
    case 4: id = PromptId::zs4; break;
    default: throw std::invalid_argument("unknown zero-shot variant " + std::to_string(variant));
  }
  const std::string& tmpl = template_override ? *template_override : default_template(id);
  return render_template(tmpl, {{"tweet", tweet_text}});
}

std::string few_shot_prompt(const std::string& driver_example,
                            const std::string& organic_example,
                            const std::string& tweet_text, bool organic_first,
                            const std::string* template_override) {
  if (driver_example.empty() || organic_example.empty())
    throw std::invalid_argument("few_shot_prompt: missing example");
  if (tweet_text.empty()) throw std::invalid_argument("few_shot_prompt: empty tweet text");

  std::string tmpl = template_override ? *template_override
                                       : default_template(PromptId::few_shot);
  if (organic_first) {
    const std::string driver_block = "Example: {driver_example}\nAnswer: True";
    const std::string organic_block = "Example: {organic_example}\nAnswer: False";
    auto pos = tmpl.find(driver_block + "\n\n" + organic_block);
    if (pos == std::string::npos)
      throw std::invalid_argument("few_shot_prompt: template layout does not support swapping");
    tmpl.replace(pos, driver_block.size() + 2 + organic_block.size(),
                 organic_block + "\n\n" + driver_block);
  }
  return render_template(tmpl, {{"driver_example", driver_example},
                                {"organic_example", organic_example},
                                {"tweet", tweet_text}});
}

std::string user_instruction() { return kUserInstruction; }

}  // namespace infoops
