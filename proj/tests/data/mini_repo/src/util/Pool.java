package demo.util;

public class Pool {
    // FIXME after YARN-2 is committed
    // we should call getCpus()
    int size;

    // HACK: sized for the tests
    char c = '/';
}
