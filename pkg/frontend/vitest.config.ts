import { defineConfig } from 'vitest/config';

export default defineConfig({
    test: {
        environment: 'happy-dom',
        environmentOptions: {
            happyDOM: {
                // The page is served from the engine's own origin in
                // deployment; tests mirror that (the engine sets no CORS).
                url: 'http://127.0.0.1:8791',
                settings: {
                    disableIframePageLoading: true,
                    disableJavaScriptFileLoading: true,
                    disableCSSFileLoading: true,
                },
            },
        },
        globalSetup: ['tests/globalSetup.ts'],
        testTimeout: 30_000,
        hookTimeout: 60_000,
    },
});
