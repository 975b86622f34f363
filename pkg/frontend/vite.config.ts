import { defineConfig } from 'vitest/config';

export default defineConfig({
  server: {
    // dev convenience: forward API calls to a local campaign server
    proxy: { '/api': 'http://127.0.0.1:8000' },
  },
  test: {
    include: ['tests/**/*.test.ts'],
    // control widgets need a DOM; everything else is plain data code
    environment: 'happy-dom',
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
