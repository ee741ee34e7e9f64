// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <fstream>

#include "onhold/error.hpp"
#include "onhold/preprocess.hpp"

namespace onhold {

namespace {

// Keep in sync with data/products.txt.
constexpr const char* kDefaultProducts[] = {
    "4813",
    "Ant",
    "Apache",
    "Applet",
    "Argouml",
    "Auths",
    "Bzip2",
    "Camel",
    "Columba",
    "Command.com",
    "Crlf",
    "Cvs",
    "Cxf",
    "Distribution",
    "Ebcdic",
    "Ejb",
    "Emf",
    "File1",
    "Foo.bar",
    "Gerrit",
    "Git",
    "Hadoop",
    "Hdfs",
    "Hibernate",
    "I18n",
    "Inetd",
    "Java",
    "Jaxb",
    "Jdk",
    "Jedit",
    "Jfreechart",
    "Jira",
    "Jmeter",
    "Jpa",
    "Jruby",
    "Jsp",
    "Jsps",
    "Junit",
    "Jvm",
    "Jws",
    "Kaffe",
    "Launchd",
    "Linux",
    "Log4j",
    "Mapreduce",
    "Maven",
    "Memcache",
    "Myisam",
    "Namespaced",
    "Nls",
    "Ocl",
    "Openssl",
    "Passwd",
    "Pojo",
    "Postgres",
    "Prepending",
    "Pwd",
    "Readline",
    "Rmi",
    "Servlet",
    "Servlets",
    "Solaris",
    "Solr",
    "Squirrel",
    "Ssh",
    "Svn",
    "Symlink",
    "Symlinks",
    "Tmp",
    "Tomcat",
    "Unix",
    "Usecase",
    "Utf",
    "Vim",
    "Webapp",
    "Webapps",
    "Xerces",
    "Xinetd",
    "Yarn",
    "Jetty",
};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

ProductDictionary ProductDictionary::defaults() {
    ProductDictionary dict;
    for (const char* word : kDefaultProducts) dict.add(word);
    return dict;
}

ProductDictionary ProductDictionary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open product dictionary " + path.string());
    ProductDictionary dict;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        std::string_view word = trim(std::string_view(line).substr(0, hash));
        if (!word.empty()) dict.add(word);
    }
    if (dict.empty()) throw Error(ErrorKind::InvalidArgument, "product dictionary " + path.string() + " is empty");
    return dict;
}

ProductDictionary::ProductDictionary(const std::vector<std::string>& words) {
    for (const auto& w : words) add(w);
}

void ProductDictionary::add(std::string_view word) {
    word = trim(word);
    if (word.empty()) return;
    if (!words_.insert(lower(word)).second) return;
    by_length_.assign(words_.begin(), words_.end());
    std::stable_sort(by_length_.begin(), by_length_.end(),
                     [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
}

bool ProductDictionary::contains(std::string_view word) const { return words_.contains(lower(word)); }

}  // namespace onhold
