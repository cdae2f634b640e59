// Placeholder; filled in once the library modules are in place.
int main() { return 0; }
