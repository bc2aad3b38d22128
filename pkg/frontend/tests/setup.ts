// Keep main.ts from auto-booting the app when imported by tests.
(window as unknown as { __ABACBENCH_TEST__?: boolean }).__ABACBENCH_TEST__ = true;
