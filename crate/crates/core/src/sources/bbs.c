unsigned bbs(unsigned long long *x, unsigned long long m)
{
    *x = (*x * *x) % m;
    return *x & 1;
}
