# unit tests package
