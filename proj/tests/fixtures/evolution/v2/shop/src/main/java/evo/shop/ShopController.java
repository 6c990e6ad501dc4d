package evo.shop;

import org.springframework.web.bind.annotation.*;
import org.springframework.web.client.RestTemplate;

@RestController
public class ShopController {
    private RestTemplate restTemplate = new RestTemplate();

    @GetMapping("/items/{id}")
    public Item item(@PathVariable String id) {
        Integer level = restTemplate.getForObject("http://stock/levels/" + id, Integer.class);
        return new Item();
    }

    @PostMapping("/checkout")
    public String checkout(@RequestBody Item item) {
        return restTemplate.postForObject("http://billing/invoices", item, String.class);
    }
}
