# functional tests package
